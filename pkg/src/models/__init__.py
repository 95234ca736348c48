# Models package
# Pydantic schemas for records, scenarios and run settings
