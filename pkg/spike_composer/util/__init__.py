# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""
The utilities are helpful modules that are required to run
Spike Composer.
"""
