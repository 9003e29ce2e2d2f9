"""Writes scenarios/evacuation_room.txt: a 37 x 33 cell room (14.8 m x 13.2 m)
with a 5 cell exit centred in the bottom wall and 300 agents placed uniformly
at random with a fixed seed."""

import argparse
import random
from pathlib import Path

WIDTH, HEIGHT = 37, 33
EXIT_CELLS = 5
AGENTS = 300

PARAMS = """k_S = 4
k_P = 6
k_W = 4
r = 10
mu = 0.5
seed = 1
max_steps = 3000
"""


def build(seed: int) -> str:
    rows = [["#"] * (WIDTH + 2)]
    rows += [["#"] + ["."] * WIDTH + ["#"] for _ in range(HEIGHT)]
    rows.append(["#"] * (WIDTH + 2))
    first = 1 + (WIDTH - EXIT_CELLS) // 2
    for c in range(first, first + EXIT_CELLS):
        rows[-1][c] = "E"
    interior = [(r, c) for r in range(1, HEIGHT + 1) for c in range(1, WIDTH + 1)]
    for r, c in random.Random(seed).sample(interior, AGENTS):
        rows[r][c] = "P"
    return PARAMS + "\n" + "\n".join("".join(row) for row in rows) + "\n"


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=2005)
    parser.add_argument(
        "--out",
        type=Path,
        default=Path(__file__).resolve().parent.parent / "scenarios" / "evacuation_room.txt",
    )
    args = parser.parse_args()
    args.out.write_text(build(args.seed))


if __name__ == "__main__":
    main()
