# Shared data models for all carpet_recur modules
