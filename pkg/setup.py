from setuptools import setup, find_packages

setup(
    name="chromalg",
    version="0.1.0",
    description="Chromatic symmetric functions in the star basis: deletion / near-contraction, spans and invariants",
    author="Jesse",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    install_requires=[
        "numpy",
        "networkx",
        "sympy",
        "pydantic>=2",
        "python-dotenv",
        "tqdm",
    ],
    extras_require={
        "test": ["pytest", "hypothesis"],
    },
    entry_points={
        "console_scripts": [
            "chromalg=chromalg.cli:main",
        ],
    },
    python_requires=">=3.8",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
)
