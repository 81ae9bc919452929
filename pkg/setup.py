import setuptools
from map_ties.__about__ import __version__

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(name="map_ties",
      version=__version__,
      author="map_ties developers",
      description="Exact analysis of MAP decoding ties on the binary symmetric channel",
      long_description=long_description,
      long_description_content_type="text/markdown",
      packages=setuptools.find_packages(exclude=["tests", "examples", "examples.*"]),
      classifiers=[
          "Development Status :: 3 - Alpha",
          "Programming Language :: Python :: 3.8",
          "Programming Language :: Python :: 3.9",
          "Programming Language :: Python :: 3.10",
          "License :: OSI Approved :: MIT License",
          "Operating System :: OS Independent"
      ],
      license="MIT",
      python_requires=">=3.8",
      tests_require=["pytest", "hypothesis"],
      setup_requires=["pytest-runner"],
      install_requires=["numpy", "scipy"],
      extras_require={"test": ["pytest", "hypothesis"], "docs": ["sphinx", "sphinx_rtd_theme"]},
      entry_points={"console_scripts": ["map-ties=map_ties.cli:main"]}
)
