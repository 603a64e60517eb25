# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License
