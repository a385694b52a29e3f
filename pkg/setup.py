from setuptools import setup, find_packages

setup(
    name="borel-workbench",
    version="1.0.0",
    description="A workbench for ranked Borel codes over Cantor space and their stage-by-stage constructions",
    packages=find_packages(exclude=["tests"]),
    install_requires=[
        "SQLAlchemy>=1.4",
        "networkx>=2.6",
    ],
    extras_require={
        "test": ["hypothesis>=6.0"],
    },
    python_requires=">=3.9",
    entry_points={
        "console_scripts": [
            "borel-workbench=src.main:main",
        ],
    },
)
