import setuptools


with open("requirements/requirements-general.txt") as requirements_production:
    install_requires = [x.strip() for x in requirements_production.readlines()]

setuptools.setup(
    name="hwtune",
    version="1.0.0",
    description=(
        "Hardware-aware quantization selection, kernel tuning and agent-driven "
        "hyperparameter search"
    ),
    packages=setuptools.find_packages(exclude=["tests", "tests.*"]),
    install_requires=install_requires,
    python_requires=">=3.10",
    package_data={
        "hwtune": [
            "py.typed",
            "space/presets/*.yaml",
            "hardware/profiles/*.yaml",
            "hardware/tables/*.yaml",
            "kerneltune/kernels/*.yaml",
        ]
    },
    entry_points={"console_scripts": ["hwtune = hwtune.harness.cli:main"]},
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
)
