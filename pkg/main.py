"""
Evanescent Photon Correlator CLI
Entry point: loads .env, then dispatches to cutoff / scan / fit / verify
"""
import sys

from dotenv import load_dotenv

# Load environment variables (EVANESCENT_WORKERS)
load_dotenv()

from src.core.cli import main  # noqa: E402


if __name__ == "__main__":
    sys.exit(main())
