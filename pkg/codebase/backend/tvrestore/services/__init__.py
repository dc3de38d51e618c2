"""
Services package initialization.
Contains the numerical modules: tensor primitives, TV operators, the
denoising and deblurring solvers, the blur operator and media helpers.
"""
