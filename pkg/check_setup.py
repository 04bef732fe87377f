#!/usr/bin/env python3
"""
Diagnostic script to check if the setup is correct.
"""
import importlib
import sys
from pathlib import Path

ROOT = Path(__file__).parent
sys.path.insert(0, str(ROOT))

PACKAGES = ("pydantic", "lark", "networkx", "pytest", "hypothesis")


def check_packages() -> bool:
    ok = True
    for package in PACKAGES:
        try:
            module = importlib.import_module(package)
            print(f"✅ {package} {getattr(module, '__version__', '')} installed")
        except ImportError:
            print(f"❌ {package} NOT installed - run: pip install -r requirements.txt")
            ok = False
    return ok


def check_grammars() -> bool:
    """lark: parse one example with each grammar."""
    try:
        from recmon.syntax.alphabet import Alphabet
        from recmon.syntax.parser import parse_formula, parse_monitor, parse_process, parse_trace

        ab = Alphabet.of(["a", "b"])
        parse_formula("max X.([a]X & [b]ff)", ab)
        parse_monitor("rec x.(a.x + b.no)", ab)
        parse_process("rec x.(a.x + b.nil)", ab)
        parse_trace("a.b(a)", ab)
        print("✅ Grammars load and parse")
        return True
    except Exception as e:
        print(f"❌ Error loading grammars: {str(e)}")
        return False


def check_systems() -> bool:
    """networkx: load every example LTS and walk it."""
    data_files = sorted((ROOT / "data").glob("*.lts"))
    if not data_files:
        print("❌ no example LTS files in data/")
        return False
    try:
        from recmon.cli.files import load_lts

        for file_path in data_files:
            lts = load_lts(file_path)
            reached = lts.weak_after({lts.initial}, ())
            print(f"✅ data/{file_path.name}: {len(lts.states)} states, {len(reached)} tau-reachable")
        return True
    except Exception as e:
        print(f"❌ Error loading example systems: {str(e)}")
        return False


def check_reports() -> bool:
    """pydantic: build and serialize a report."""
    try:
        from recmon.models.schemas import Report

        Report(command="check", result=True, seed=0, exit_code=0).model_dump_json()
        print("✅ Reports serialize to JSON")
        return True
    except Exception as e:
        print(f"❌ Error building reports: {str(e)}")
        return False


def main() -> int:
    print("=" * 60)
    print("recmon - Setup Check")
    print("=" * 60)
    print()

    config_file = ROOT / "config.properties"
    if config_file.exists():
        print("✅ config.properties file exists")
    else:
        print("❌ config.properties file NOT found")
        print("   Defaults and environment variables will be used")

    from recmon.config import get_config

    config = get_config()
    print(f"✅ Alphabet: {','.join(config.alphabet)}")
    print(f"✅ Tau cap: {config.tau_cap}, workers: {config.workers}, seed: {config.seed}")
    print()

    ok = check_packages()
    print()
    if ok:
        ok = all([check_grammars(), check_systems(), check_reports()])

    print()
    print("=" * 60)
    print("Summary")
    print("=" * 60)
    print()
    if ok:
        print("✅ Setup looks good")
    else:
        print("If you see ❌ errors above, fix them before running recmon.")
        print()
        print("Common fixes:")
        print("1. Install dependencies: pip install -r requirements.txt")
        print("2. Run from the repository root so config.properties and data/ are found")
    print()
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
