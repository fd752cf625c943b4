"""Round-trip table: weight -> model-end transport -> recovered weight."""

import argparse
import random
from fractions import Fraction

from bryantlab.connection import PathLoop, model_end_field, parallel_transport
from bryantlab.ends import weight_from_holonomy

FIXED = [Fraction(0), Fraction(1, 6), Fraction(1, 4), Fraction(1, 3),
         Fraction(1, 2), Fraction(2, 3), Fraction(3, 4), Fraction(5, 6)]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--random", type=int, default=0, metavar="K",
                        help="append K random weights with denominator <= 97")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    weights = list(FIXED)
    rng = random.Random(args.seed)
    for _ in range(args.random):
        q = rng.randint(2, 97)
        weights.append(Fraction(rng.randint(1, q - 1), q))

    circle = PathLoop.circle(0j, 1.0)
    print(f"{'alpha':>8s}  {'recovered':>12s}  exact")
    exact = 0
    for alpha in weights:
        u = parallel_transport(model_end_field(alpha), circle)
        got = weight_from_holonomy(u)
        hit = isinstance(got, Fraction) and got == alpha
        exact += hit
        print(f"{str(alpha):>8s}  {str(got):>12s}  {'yes' if hit else 'NO'}")
    print(f"{exact}/{len(weights)} recovered exactly")
    return 0 if exact == len(weights) else 1


if __name__ == "__main__":
    raise SystemExit(main())
