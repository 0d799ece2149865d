"""When is a star network fair to its hub?

The hub serves every route, so its cost usually differs from a spoke's.
The gap factors as (N-2) * (m*N^2 - (a-r)*N - r) / N^2, which makes the
question of equal costs a question about the positive root of a
quadratic. This script sweeps a few price vectors and reports, for
each, whether some network size leaves hub and spokes paying the same.
"""

from dhtcostlab import CostParams, star_cost_gap, star_costs, star_equilibrium_size
from dhtcostlab.closedforms import AllN, Candidate, NoneBesidesTwo

PRICES = [
    CostParams(s=5.0, a=0.0, r=0.0, m=0.0),
    CostParams(s=0.0, a=3.0, r=1.0, m=0.0),
    CostParams(s=0.0, a=1.0, r=2.0, m=0.0),
    CostParams(s=0.0, a=1.0, r=1000.0, m=0.5),
    CostParams(s=1.0, a=5.0, r=2.0, m=1.0),
]


def main() -> None:
    for params in PRICES:
        result = star_equilibrium_size(params)
        label = f"s={params.s} a={params.a} r={params.r} m={params.m}"
        if isinstance(result, AllN):
            print(f"{label}: equal at every size (only storage is priced)")
        elif isinstance(result, NoneBesidesTwo):
            print(f"{label}: never equal beyond the trivial 2-node star")
        else:
            note = "an integer size" if result.is_integer else "not an integer"
            print(f"{label}: root at N = {result.n0_real:.4f} ({note})")
        assert isinstance(result, (AllN, NoneBesidesTwo, Candidate))

    params = CostParams(s=0.0, a=1.0, r=2.0, m=0.0)
    print()
    print("checking the a=1, r=2 case by hand around its root:")
    for n in (2, 3, 4):
        costs = star_costs(params, n)
        print(f"  N={n}: hub {costs.center_cost:.4f}, spoke "
              f"{costs.peripheral_cost:.4f}, gap polynomial "
              f"{star_cost_gap(params, n):+.4f}")


if __name__ == "__main__":
    main()
