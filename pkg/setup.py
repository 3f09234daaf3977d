from setuptools import setup

# Modules live flat under src/ and import each other by bare name
py_modules = ["misc", "codebook", "imaging", "metrics", "analysis", "baseline", "cli"]
packages = ["codec"]

# Utility scripts are not installed; add util/ to PYTHONPATH to import them
install_requires = ["numpy>=1.20", "Pillow>=8.0"]
extras_require = {
    "tests" : ["pytest", "hypothesis"],
    "docs" : ["sphinx", "sphinx_rtd_theme"],
}

setup(
    name = "pyqsteg",
    version = "1.0",
    description = "Quinary text-in-image steganography with bounded per-channel perturbations",
    long_description = open("README.rst", encoding="utf-8").read(),
    package_dir = {"" : "src"},
    py_modules = py_modules,
    packages = packages,
    python_requires = ">=3.8",
    install_requires = install_requires,
    extras_require = extras_require,
    entry_points = {"console_scripts" : ["pyqsteg = cli:main"]},
)
