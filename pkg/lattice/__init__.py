# Lattice package
