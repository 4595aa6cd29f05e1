"""
Complaint map components, including entity (data) models, text preprocessing, map
training on one or many workers, visualisation, benchmarks and file storage.
"""

__version__ = "1.0.0"
