import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[2]))

from spin_entropy.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main(["random", *sys.argv[1:]]))
