"""Writing algebra documents and driving the command line from Python."""

# %%
import tempfile
from pathlib import Path

from homgd import read, serialize, truncated_euler, write
from homgd.cli import main

tmp = Path(tempfile.mkdtemp())
write(tmp / "E3.alg", truncated_euler(3, 2, 0))
print(serialize(read(tmp / "E3.alg")))

# %% same as `homgd check --profile hom_gd E3.alg` in a shell
code = main(["check", "--profile", "hom_gd", str(tmp / "E3.alg")])
print("exit code:", code)

# %% to a conformal algebra and back
main(["equiv", "to-conformal", "--in", str(tmp / "E3.alg"), "--out", str(tmp / "E3.conf")])
main(["conf-check", str(tmp / "E3.conf")])
main(["equiv", "to-gd", "--in", str(tmp / "E3.conf")])
