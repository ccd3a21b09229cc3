from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from linkcent.games import (
    CATALOG,
    CapExceededError,
    CoalitionGame,
    SymmetricGame,
    attachment,
    attachment_messages,
    conferences,
    custom_game,
    game_from_json_obj,
    harsanyi_dividend,
    messages,
    overhead,
    shapley_dividends,
    shapley_marginal,
)

from oracles import dividend_by_subsets, shapley_by_permutations


def seeded_game(n, seed):
    rnd = [Fraction((seed * 2654435761 + mask * 40503) % 97 - 48, 7) for mask in range(1 << n)]
    rnd[0] = Fraction(0)
    return CoalitionGame.from_table(rnd)


# -- symmetric game catalog ------------------------------------------------------


def test_catalog_values_match_their_formulas():
    assert [messages().f(s) for s in range(5)] == [0, 0, 2, 6, 12]
    assert [overhead().f(s) for s in range(4)] == [0, -1, -1, -1]
    assert [attachment().f(s) for s in range(5)] == [0, 0, 2, 4, 6]
    assert [attachment_messages().f(s) for s in range(5)] == [0, 0, 4, 10, 18]
    assert [conferences().f(s) for s in range(5)] == [0, 0, 1, 4, 11]


def test_catalog_flags():
    f_m = messages().flags(10)
    assert f_m.zero_normalized and f_m.convex and f_m.smooth_nonneg and f_m.superadditive
    f_o = overhead().flags(10)
    assert not f_o.zero_normalized
    assert f_o.convex and not f_o.smooth_nonneg
    f_a = attachment().flags(10)
    assert f_a.zero_normalized and f_a.convex and f_a.superadditive and f_a.smooth_nonneg
    assert attachment_messages().flags(10).smooth_nonneg
    assert conferences().flags(12).smooth_nonneg


def test_admissible_is_zero_normalized_plus_superadditive():
    assert messages().admissible(8)
    assert not overhead().admissible(8)


def test_characteristic_function_must_vanish_on_empty():
    with pytest.raises(ValueError):
        SymmetricGame("bad", lambda s: 1)
    with pytest.raises(ValueError):
        custom_game("bad", [1, 2])


def test_custom_game_json_and_rational_entries():
    g = game_from_json_obj({"name": "thirds", "f": [0, 0, "2/3", 1.5]})
    assert g.f(2) == Fraction(2, 3)
    assert g.f(3) == Fraction(3, 2)
    with pytest.raises(ValueError):
        g.f(4)  # beyond the table
    with pytest.raises(ValueError):
        game_from_json_obj({"f": [0]})


# -- dividends -------------------------------------------------------------------


def test_unanimity_dividends_are_the_basis():
    game = CoalitionGame.unanimity(4, support=0b0110)
    assert harsanyi_dividend(game, 0b0110) == 1
    assert harsanyi_dividend(game, 0b0010) == 0  # too small
    assert harsanyi_dividend(game, 0b1110) == 0  # strictly larger
    assert harsanyi_dividend(game, 0b1001) == 0


def test_messages_pair_dividend_is_two():
    tab = messages().table(4)
    game = CoalitionGame(4, lambda mask: tab[mask.bit_count()])
    assert harsanyi_dividend(game, 0b0011) == 2


@pytest.mark.parametrize("size", [2, 3, 4, 5, 6])
def test_attachment_dividends_alternate_beyond_pairs(size):
    # 2(s-1) is affine only from s=1 on; the size-s difference at 0 keeps
    # picking up the jump, so the dividend is 2*(-1)^s rather than zero
    tab = attachment().table(6)
    game = CoalitionGame(6, lambda mask: tab[mask.bit_count()])
    mask = (1 << size) - 1
    want = 2 if size % 2 == 0 else -2
    assert harsanyi_dividend(game, mask) == want
    assert dividend_by_subsets(range(size), lambda S: tab[len(S)]) == want


def test_empty_coalition_has_no_dividend():
    with pytest.raises(ValueError):
        harsanyi_dividend(seeded_game(3, 1), 0)


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_value_is_the_sum_of_dividends_of_subcoalitions(seed):
    game = seeded_game(4, seed)
    for mask in range(1, 1 << 4):
        total = Fraction(0)
        sub = mask
        while True:
            if sub:
                total += harsanyi_dividend(game, sub)
            if sub == 0:
                break
            sub = (sub - 1) & mask
        assert total == game.value(mask)


# -- shapley -----------------------------------------------------------------


def test_symmetric_games_split_evenly():
    n = 5
    tab = messages().table(n)
    game = CoalitionGame(n, lambda mask: tab[mask.bit_count()])
    want = Fraction(messages().f(n), n)
    assert shapley_marginal(game) == (want,) * n


def test_two_player_split():
    game = CoalitionGame.from_table([0, 0, 0, 2])
    assert shapley_marginal(game) == (Fraction(1), Fraction(1))


def test_link_game_of_two_edge_chain_under_messages():
    # edges {0,1}, {1,2}; worths: single edge 2, both 6
    game = CoalitionGame.from_table([0, 2, 2, 6])
    assert shapley_marginal(game) == (Fraction(3), Fraction(3))


def test_unanimity_shapley_splits_over_support():
    game = CoalitionGame.unanimity(4, support=0b0101)
    phi = shapley_dividends(game)
    assert phi == (Fraction(1, 2), 0, Fraction(1, 2), 0)


@given(st.integers(0, 10_000))
@settings(max_examples=20, deadline=None)
def test_marginal_and_dividend_forms_agree(seed):
    game = seeded_game(4, seed)
    assert shapley_marginal(game) == shapley_dividends(game)


@given(st.integers(0, 10_000))
@settings(max_examples=10, deadline=None)
def test_shapley_matches_permutation_oracle(seed):
    game = seeded_game(4, seed)
    tab = game.table()
    oracle = shapley_by_permutations(
        range(4), lambda S: tab[sum(1 << p for p in S)]
    )
    got = shapley_marginal(game)
    assert all(got[p] == oracle[p] for p in range(4))


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_efficiency_is_exact(seed):
    game = seeded_game(5, seed)
    phi = shapley_marginal(game)
    assert sum(phi) == game.value((1 << 5) - 1)


def test_exact_cap_refuses_large_carriers():
    game = CoalitionGame(30, lambda mask: mask.bit_count())
    with pytest.raises(CapExceededError, match="[Mm]onte"):
        shapley_marginal(game, cap=26)


def test_catalog_names_are_stable():
    assert sorted(CATALOG) == [
        "attachment",
        "attachment-messages",
        "conferences",
        "messages",
        "overhead",
    ]
    for name, factory in CATALOG.items():
        assert factory().name == name
