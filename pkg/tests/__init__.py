# This file enables test discovery
