"""Builds the _core extension with CMake so pip installs match the CMake tree.

The CMake project is the source of truth for compiler flags; this shim just
drives it and drops the resulting module into the package directory.
"""

import shutil
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
        out_dir = Path(self.get_ext_fullpath(ext.name)).parent.resolve()
        build_dir = Path(self.build_temp).resolve()
        build_dir.mkdir(parents=True, exist_ok=True)
        source_dir = Path(__file__).parent.resolve()
        subprocess.run(
            ["cmake", str(source_dir), f"-DPython3_EXECUTABLE={sys.executable}"],
            cwd=build_dir,
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_core", "-j"],
            check=True,
        )
        out_dir.mkdir(parents=True, exist_ok=True)
        for module in (build_dir / "python" / "revlab").glob("_core*"):
            shutil.copy2(module, out_dir)


setup(
    ext_modules=[CMakeExtension("revlab._core")],
    cmdclass={"build_ext": CMakeBuild},
)
