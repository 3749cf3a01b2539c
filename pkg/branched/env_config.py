import os

from dotenv import load_dotenv

# Load BRANCHED_* overrides from a local .env file when present
if os.path.exists(".env"):
    load_dotenv()
