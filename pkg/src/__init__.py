"""noisy-select - Fault-tolerant selection under noisy comparisons"""
