# Moduli package
