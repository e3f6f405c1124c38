from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

try:
    with open("requirements.txt", "r") as f:
        requirements = [line.split("#")[0].strip() for line in f if line.strip() and not line.startswith("#")]
except FileNotFoundError:
    # Fallback requirements if requirements.txt is not found
    requirements = [
        "click",
        "click-option-group",
        "numpy",
        "scipy",
        "networkx",
    ]

test_requirements = [r for r in requirements if r.startswith("pytest")]
requirements = [r for r in requirements if not r.startswith("pytest")]

setup(
    name="petersen-girth",
    version="1.0.0",
    description="Odd girth and circular chromatic bounds of generalized Petersen graphs, with explicit homomorphism witnesses.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "examples", "examples.*"]),
    install_requires=requirements,
    extras_require={"test": test_requirements or ["pytest"]},
    entry_points={
        'console_scripts': [
            'petersen-girth=petersen_girth.main:main',
        ],
    },
    python_requires=">=3.8",
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    keywords="graph theory petersen odd girth circular chromatic number homomorphism",
)
