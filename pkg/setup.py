from setuptools import find_packages, setup

META_VERSION = "1.0"
VERSION = "0.1.0"
DESCRIPTION = "Bound states in and outside the continuum of a giant atom on a coupled resonator waveguide"

with open("README.md", "r", encoding="utf-8") as file:
    LONG_DESCRIPTION = file.read()


with open("requirements.txt", encoding="utf-8") as f:
    content = f.readlines()
requirements = [x.strip() for x in content if x.strip() and not x.strip().startswith("#") and "git+" not in x]

setup(
    name="giantbic",
    version=VERSION,
    description=DESCRIPTION,
    long_description=LONG_DESCRIPTION,
    long_description_content_type="text/markdown",
    include_package_data=True,
    install_requires=requirements,
    zip_safe=False,
    packages=find_packages(exclude=["tests"]),
    python_requires=">=3.8",
    entry_points={"console_scripts": ["giantbic=giantbic.__main__:main"]},
    keywords=["python", "waveguide-qed", "giant-atom", "bound-states", "bic"],
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Physics",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Operating System :: OS Independent",
    ],
)
