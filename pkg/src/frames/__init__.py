# Frames package
# Stream readers/writers and the synthetic traffic generator
