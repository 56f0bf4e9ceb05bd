from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

sources = [
    "bindings/module.cpp",
    "src/path.cpp",
    "src/ftable.cpp",
    "src/law.cpp",
    "src/scheme.cpp",
    "src/colored.cpp",
    "src/gibbs.cpp",
    "src/predict.cpp",
    "src/io.cpp",
]

setup(
    ext_modules=[
        Pybind11Extension(
            "revmc._revmc",
            sources,
            include_dirs=["include"],
            cxx_std=20,
        )
    ],
    cmdclass={"build_ext": build_ext},
)
