"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
Design-based analysis of matched-pair cluster-randomized experiments.
"""
# C O N S T A N T S ###########################################################

__version__ = "1.0.0"

TOOL_NAME = "mpcr"

# E N D   O F   F I L E #######################################################
