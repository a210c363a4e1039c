import sys
from pathlib import Path

# golden_cases lives beside the tests rather than in the package
sys.path.insert(0, str(Path(__file__).parent))
