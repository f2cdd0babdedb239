"""Builds the _retfront pybind11 extension through the project's CMake tree."""

import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        extdir = Path(self.get_ext_fullpath(ext.name)).parent.resolve()
        build_temp = Path(self.build_temp) / ext.name
        build_temp.mkdir(parents=True, exist_ok=True)
        source = Path(__file__).parent.resolve()
        subprocess.check_call(
            [
                "cmake",
                str(source),
                f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={extdir}",
                f"-DPython3_EXECUTABLE={sys.executable}",
                "-DCMAKE_BUILD_TYPE=Release",
                "-DRETFRONT_BUILD_PYTHON=ON",
                "-DRETFRONT_BUILD_TESTS=OFF",
            ],
            cwd=build_temp,
        )
        subprocess.check_call(
            ["cmake", "--build", ".", "--target", "_retfront", "-j"], cwd=build_temp
        )


setup(
    packages=["retfront"],
    package_dir={"": "python"},
    ext_modules=[CMakeExtension("_retfront")],
    cmdclass={"build_ext": CMakeBuild},
)
