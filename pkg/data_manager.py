"""
Data management utilities
Handles problem-file loading, report persistence and input hashing
"""

import json
import hashlib
from pathlib import Path

from config import CORPUS_DIR, NEGATIVE_CORPUS_DIR

PROBLEM_SUFFIX = ".problem"


def load_problem_text(filepath):
    """Read a UTF-8 problem file"""
    return Path(filepath).read_text(encoding="utf-8")


def load_json(filepath):
    """Load data from JSON file"""
    filepath = Path(filepath)
    if filepath.exists():
        with open(filepath, 'r', encoding="utf-8") as f:
            return json.load(f)
    return {}


def dumps_json(data):
    """Canonical JSON text: sorted keys, two-space indent"""
    return json.dumps(data, indent=2, sort_keys=True)


def save_json(filepath, data):
    """Save data to JSON file, creating parent directories"""
    filepath = Path(filepath)
    filepath.parent.mkdir(parents=True, exist_ok=True)
    with open(filepath, 'w', encoding="utf-8") as f:
        f.write(dumps_json(data) + "\n")


def save_text(filepath, text):
    filepath = Path(filepath)
    filepath.parent.mkdir(parents=True, exist_ok=True)
    filepath.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")


def input_hash(text):
    """SHA-256 of the problem text"""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def corpus_files(negative=False):
    """Bundled problem files, sorted by name"""
    directory = NEGATIVE_CORPUS_DIR if negative else CORPUS_DIR
    return sorted(directory.glob(f"*{PROBLEM_SUFFIX}"))


def reference_case_path(name):
    return CORPUS_DIR / f"{name}{PROBLEM_SUFFIX}"
