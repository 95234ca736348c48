# Source package
# Line-scan vehicle frame extraction
