# Templates package
# Structured report records and plain-text tables
