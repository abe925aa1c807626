#!/usr/bin/env python3

from typing import Optional, Tuple

# For all the procedures in CcUI, return a tuple as the result
# The first element is the exit status (0 success, 1 verification failure,
# 2 parse error, 3 domain or precondition error)
# The second element is the error message if it fails.
CcProcedureResult = Tuple[int, Optional[str]]

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_DOMAIN_ERROR = 3
