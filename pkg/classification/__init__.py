# Classification package
