#!/usr/bin/env python3
"""
Setup script for Lattice Sum
"""

import os
import sys
import subprocess

def check_python_version():
    """Check if Python version is supported"""
    if sys.version_info < (3, 9):
        print("❌ Python 3.9 or higher is required")
        return False
    print(f"✅ Python {sys.version_info.major}.{sys.version_info.minor} is supported")
    return True

def install_dependencies():
    """Install required dependencies"""
    print("📦 Installing dependencies...")

    requirements = os.path.join(os.path.dirname(os.path.abspath(__file__)), "requirements.txt")

    try:
        subprocess.check_call([sys.executable, "-m", "pip", "install", "-r", requirements])
        print("✅ Dependencies installed successfully")
        return True

    except subprocess.CalledProcessError as e:
        print(f"❌ Failed to install dependencies: {e}")
        return False

def check_data_files():
    """Check that the bundled example polygons are present"""
    print("📁 Checking data files...")

    from config import DATA_CONFIG, get_data_path

    missing = []
    for name in ["square.json", "transsquare.json", "P.json", "A.json", "largeA.json", "T.json",
                 DATA_CONFIG["golden_file"]]:
        if os.path.exists(get_data_path(name)):
            print(f"Found: {name}")
        else:
            print(f"Missing: {name}")
            missing.append(name)

    if missing:
        print("❌ Some data files are missing; the golden tests will fail")
        return False
    print("✅ Data files present")
    return True

def smoke_test():
    """Count the lattice points of the unit square"""
    print("🔢 Running a smoke test...")

    try:
        from src.brion.summation import number_points_polygon

        count = number_points_polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
        if count != 4:
            print(f"❌ Unit square has {count} lattice points, expected 4")
            return False
        print("✅ Unit square has 4 lattice points")
        return True

    except ImportError as e:
        print(f"❌ Import failed: {e}")
        return False

def main():
    """Main setup function"""
    print("📐 Lattice Sum Setup")
    print("=" * 40)

    # Check Python version
    if not check_python_version():
        sys.exit(1)

    # Install dependencies
    if not install_dependencies():
        print("❌ Setup failed during dependency installation")
        sys.exit(1)

    # Check data
    check_data_files()

    # Smoke test
    if not smoke_test():
        sys.exit(1)

    print("\n" + "=" * 40)
    print("🎉 Setup completed successfully!")
    print("\nNext steps:")
    print("1. Run: python main.py count --input data/P.json")
    print("2. Try: python main.py ehrhart --input data/transsquare.json")
    print("3. Run the tests with: pytest (add -m slow for the degree-64 goldens)")

if __name__ == "__main__":
    if len(sys.argv) > 1:
        # Invoked by a build frontend (pip / setuptools.build_meta):
        # package metadata lives in pyproject.toml.
        from setuptools import setup
        setup()
    else:
        main()
