# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""
The quantization package converts trained floating-point spiking
networks into the integer models run by the compute array, and
contains the desk-scale reference trainer used to produce them.
"""
