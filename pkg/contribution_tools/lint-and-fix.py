#!/usr/bin/env python3
"""
Lint and Fix Script for py-spin-entropy
Runs linters and tests, applying automatic fixes where possible
"""

import argparse
import glob
import subprocess
import sys
from pathlib import Path
from typing import List, Tuple

SOURCE_PATTERNS = [
    "../spin_entropy/*.py",
    "../scripts/*/*.py",
    "../tests/*.py",
]
TOOLS = ["black", "isort", "flake8", "mypy", "pytest"]


def run_command(cmd: List[str], description: str, fix_mode: bool = False) -> Tuple[bool, str]:
    """Run a command and return success status and output"""
    print(f"{'🔧 Fixing' if fix_mode else '🔍 Checking'}: {description}")

    try:
        result = subprocess.run(
            cmd, capture_output=True, text=True, cwd=Path(__file__).parent
        )
    except FileNotFoundError:
        error_msg = f"Command not found: {' '.join(cmd)}"
        print(f"  ❌ {description} - {error_msg}")
        return False, error_msg

    if result.returncode == 0:
        print(f"  ✅ {description} - OK")
        return True, result.stdout

    print(f"  ❌ {description} - FAILED")
    if result.stdout:
        print(f"     STDOUT: {result.stdout}")
    if result.stderr:
        print(f"     STDERR: {result.stderr}")
    return False, result.stderr


def check_dependencies() -> bool:
    """Check if required linting and test tools are installed"""
    missing_tools = [
        tool for tool in TOOLS if not run_command([tool, "--version"], f"Checking {tool}")[0]
    ]
    if missing_tools:
        print(f"\n❌ Missing tools: {', '.join(missing_tools)}")
        print("Install with: pip install -r requirements-dev.txt")
        return False
    return True


def source_files() -> List[str]:
    files: List[str] = []
    for pattern in SOURCE_PATTERNS:
        files.extend(sorted(glob.glob(pattern)))
    return files


def run_linters(fix_mode: bool = False, run_tests: bool = True) -> bool:
    """Run all linters, applying fixes if fix_mode is True"""
    files = source_files()
    if not files:
        print("⚠️ No Python files found")
        return True
    print(f"📁 Found {len(files)} Python files to check:")

    results = []

    black_cmd = ["black", "--skip-string-normalization"]
    if not fix_mode:
        black_cmd += ["--check", "--diff"]
    results.append(run_command(black_cmd + files, "Black code formatting", fix_mode)[0])

    isort_cmd = ["isort"] if fix_mode else ["isort", "--check-only", "--diff"]
    results.append(run_command(isort_cmd + files, "isort import sorting", fix_mode)[0])

    # flake8 has no fixer
    results.append(
        run_command(["flake8", "--config", ".flake8"] + files, "flake8 style guide")[0]
    )

    # one package, so no duplicate module names to trip over
    results.append(
        run_command(
            ["mypy", "--config-file", "../pyproject.toml", "../spin_entropy"],
            "mypy type checking",
        )[0]
    )

    if run_tests:
        results.append(run_command(["pytest", "-q", ".."], "pytest test suite")[0])

    return all(results)


def main():
    parser = argparse.ArgumentParser(description="Lint and fix Python code")
    parser.add_argument(
        "--fix", action="store_true", help="Apply automatic fixes where possible"
    )
    parser.add_argument(
        "--check-deps",
        action="store_true",
        help="Only check if dependencies are installed",
    )
    parser.add_argument(
        "--skip-tests", action="store_true", help="Run linters only, not pytest"
    )
    args = parser.parse_args()

    print("🐍 Python Code Quality Tool")
    print("=" * 50)

    if args.check_deps:
        if check_dependencies():
            print("\n✅ All dependencies are installed!")
            sys.exit(0)
        sys.exit(1)

    if not check_dependencies():
        sys.exit(1)

    print(f"\n{'🔧 FIXING MODE' if args.fix else '🔍 CHECK MODE'}")
    print("-" * 30)

    success = run_linters(fix_mode=args.fix, run_tests=not args.skip_tests)

    print("\n" + "=" * 50)
    if success:
        print("✅ All checks passed!")
        if not args.fix:
            print("💡 Run with --fix to automatically fix formatting issues")
    else:
        print("❌ Some checks failed!")
        if not args.fix:
            print("💡 Run with --fix to automatically fix what can be fixed")
        sys.exit(1)


if __name__ == "__main__":
    main()
