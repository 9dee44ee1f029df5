import logging
import os
import signal
import sys

from dotenv import load_dotenv

load_dotenv()

from cli.commands import run

# Configure logging
logging.basicConfig(
    level=os.getenv("INGHAM_LOG_LEVEL", "INFO").upper(),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[
        logging.FileHandler('ingham.log'),
        logging.StreamHandler(sys.stderr)
    ]
)

logger = logging.getLogger(__name__)


def signal_handler(sig, frame):
    """Stop a running campaign cleanly"""
    logger.info("Interrupted, shutting down...")
    sys.exit(130)


signal.signal(signal.SIGINT, signal_handler)
signal.signal(signal.SIGTERM, signal_handler)

if __name__ == "__main__":
    sys.exit(run())
