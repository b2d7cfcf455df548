# Number theory package
