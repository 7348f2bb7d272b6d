"""
CLI entrypoint.

Operator notes:
- This file should remain extremely small and boring.
- Runtime configuration is read from TORELLI_* environment variables (or .env)
  inside app.main.run(); the subcommand flags override them.
- If startup crashes, the error should be immediately obvious to the operator.
"""

import logging
import sys

from app.main import run


def main() -> None:
    try:
        run()
    except RuntimeError:
        logging.basicConfig(level=logging.ERROR)
        logging.exception("toolkit failed to start.")
        print("\n❌ toolkit failed to start.", file=sys.stderr)
        print("   See error above. Most common causes:", file=sys.stderr)
        print("   - TORELLI_FIXTURES_DIR / TORELLI_GOLDEN_DIR point at a missing folder", file=sys.stderr)
        print("   - TORELLI_TIME_BUDGET is not positive", file=sys.stderr)
        print("   - Missing dependencies / broken venv\n", file=sys.stderr)
        sys.exit(1)


if __name__ == "__main__":
    main()
