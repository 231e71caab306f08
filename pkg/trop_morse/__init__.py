# Tropical local Morse data toolkit
__version__ = "1.0.0"
