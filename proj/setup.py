"""CMake-driven build of the `stam._stam` extension module."""

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
        out_dir = Path(self.get_ext_fullpath(ext.name)).resolve().parent
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)
        source_dir = Path(__file__).resolve().parent

        configure = [
            "cmake",
            str(source_dir),
            "-DCMAKE_BUILD_TYPE=Release",
            "-DSTAM_BUILD_PYTHON=ON",
            "-DSTAM_BUILD_TESTS=OFF",
            f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={out_dir}",
            f"-DPython3_EXECUTABLE={sys.executable}",
        ]
        try:
            import pybind11

            configure.append(f"-Dpybind11_DIR={pybind11.get_cmake_dir()}")
        except ImportError:
            pass  # fall back to a system-wide pybind11
        subprocess.run(configure, cwd=build_dir, check=True)
        subprocess.run(
            ["cmake", "--build", ".", "--target", "_stam", "--parallel"],
            cwd=build_dir,
            check=True,
        )


setup(
    ext_modules=[CMakeExtension("stam._stam")],
    cmdclass={"build_ext": CMakeBuild},
)
