import sys
from pathlib import Path

# Make the oracle helpers importable regardless of pytest rootdir handling.
sys.path.insert(0, str(Path(__file__).parent))
