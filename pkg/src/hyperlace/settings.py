"""Runtime switches."""

import os

# Verify every intermediate construction, not just the final path. Tests turn this on.
VERIFY_STEPS = os.environ.get("HYPERLACE_VERIFY", "0") == "1"
