"""Surface groups as HNN towers, and the piece structure of a level.

The orientable genus-n surface group embeds in a tower where x1 is a
stable letter conjugating x2*...*x(2n) to its reverse; the surface
relator evaluates to the identity.  A reduced generating set of a tower
level also carries a pregroup of "pieces": elements whose products either
stay pieces or genuinely start a new block.
"""

import znfree as z
from znfree import pregroup


def main():
    print("== orientable genus 2: relator vanishes ==")
    s = z.surface_orientable(2)
    rel = z.parse_word(s, "x1*(x2*x3*x4)*x1^-1*(x4*x3*x2)^-1")
    print("  x1*(x2*x3*x4)*x1^-1*(x4*x3*x2)^-1 ->",
          z.render(s, rel), "| identity:", z.is_identity(rel))

    print("\n== nonorientable (3 cross-caps): relator vanishes ==")
    ns = z.surface_nonorientable(3)
    rel = z.parse_word(ns, "x1*(x2*x3)*x1^-1*(x3^-1*x2)^-1")
    print("  x1*(x2*x3)*x1^-1*(x3^-1*x2)^-1 ->",
          z.render(ns, rel), "| identity:", z.is_identity(rel))

    print("\n== splitting the top level of a reduced set ==")
    Y = z.GenSet(s, [z.parse_word(s, w) for w in ("x2", "x3", "x4", "x1")])
    sp = z.split_level(s, Y)
    print("  base:", ", ".join(z.render(s, g) for g in sp.base_gens))
    for y, src, tgt in sp.stable_letters:
        pairs = ", ".join(f"{z.render(s, a)} -> {z.render(s, b)}"
                          for a, b in zip(src, tgt))
        print(f"  letter: {z.render(s, y)} [{pairs}]")

    print("\n== piece arithmetic ==")
    x = z.parse_word(s, "x2*x1*x3")          # one block with margins: a piece
    y = z.parse_word(s, "x3^-1*x1^-1*x4")    # inverse-letter piece
    print("  x2*x1*x3 is a piece:", z.pz_membership(s, Y, x))
    print("  product with x3^-1*x1^-1*x4 defined:",
          z.pz_product_defined(s, Y, x, y))
    d = z.decompose(s, Y, x)
    print(f"  decomposition: h1={z.render(s, d.h1)}  f={z.render(s, d.f)}  "
          f"h2={z.render(s, d.h2)}")

    print("\n== sampled pregroup verification ==")
    rep = z.verify_pregroup(s, Y, sample_size=200, seed=7)
    print(" ", rep)


if __name__ == "__main__":
    main()
