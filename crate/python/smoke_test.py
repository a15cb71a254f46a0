"""Quick check that the extension module loads and agrees with known values."""

from fractions import Fraction

import morsekit as mk


def main():
    assert mk.sigma_hat(0) == 1
    assert mk.sigma_hat(1) == Fraction(-1, 3)
    assert mk.sigma_hat(3) == Fraction(1, 3)
    assert mk.sigma_hat(6) == mk.sigma_hat(3)

    cache = mk.SigmaCache()
    assert cache.get(9) == Fraction(1, 6)
    assert len(cache) > 0

    rep = mk.valuation_report(7)
    assert rep["lemma_holds"]
    assert mk.v2(Fraction(3, 8)) == -3

    w = mk.disjointness_witness(1, 3)
    assert (w["t"], w["c1"], w["c2"]) == (3, Fraction(1, 3), Fraction(1, 6))

    tm = mk.MorseSpec("tm")
    assert tm.prefix(3) == "01101001"
    assert [tm.bit(n) for n in range(8)] == [mk.thue_morse_bit(n) for n in range(8)]
    assert mk.MorseSpec("001,01*").prefix(2) == "001110"
    assert mk.block_product("01", "01") == "0110"

    sk = mk.toeplitz_skeleton(2)
    assert sk["period"] > 0

    corr = mk.tm_correlation(1, 4096)
    assert abs(corr["deviation"]) < 1e-2

    mu = mk.MoebiusTable(10**4)
    assert [mu.mu(n) for n in range(1, 7)] == [1, -1, -1, 0, -1, 1]
    assert mu.mertens(10) == -1
    assert mu.squarefree_count(10) == 7
    assert abs(mu.tm_orthogonality(10**4)) < 0.05

    rows = mu.row_decomposition([1, -1], 5000, 3)
    assert rows["regrouping_exact"]

    ce = mu.counterexample(2000)
    assert ce["all_ok"]

    try:
        mu.mu(10**5)
    except (IndexError, ValueError):
        pass
    else:
        raise AssertionError("out-of-range lookup should raise")

    print("python smoke test ok")


if __name__ == "__main__":
    main()
