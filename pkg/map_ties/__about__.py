__project__ = "map_ties"
__author__ = "map_ties developers"
__version__ = "0.1.0"
__license__ = "MIT"
