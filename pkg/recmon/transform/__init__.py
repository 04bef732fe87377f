"""Transform package: monitors to automata and back."""
