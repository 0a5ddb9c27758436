import os
import sys

# Under ctest the module comes from the build tree; keep an editable install
# from shadowing it.
if os.environ.get("SVTAN_EXPECT_MODULE_DIR"):
    sys.meta_path[:] = [f for f in sys.meta_path if type(f).__name__ != "ScikitBuildRedirectingFinder"]
