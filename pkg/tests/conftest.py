import sys
from pathlib import Path

# so the test modules can import the shared oracle helpers as `oracles`
sys.path.insert(0, str(Path(__file__).parent))
