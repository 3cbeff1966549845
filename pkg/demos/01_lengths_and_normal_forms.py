"""Tour of the core engine: towers, normal forms, and Z^n lengths.

Elements of an HNN tower are stored in a canonical block normal form, and
every element carries an exact vector-valued length.  Length vectors are
written least-significant coordinate first; the most significant differing
coordinate decides comparisons, and the top coordinate counts top-level
blocks.
"""

import znfree as z


def show(t, expr):
    g = z.parse_word(t, expr)
    print(f"  {expr:28s} -> {z.render(t, g):32s} length {z.length(t, g)}")


def main():
    print("== T1: F(a, b) with a stable letter z conjugating a to b ==")
    t = z.t1()
    show(t, "a*b*a^-1")
    show(t, "z^-1*a*z")            # equals b by the defining relation
    show(t, "z^-1*a")              # length (-1, 1): a cancels into z's tail
    show(t, "a*z*b*z^-1")

    a, b, zl = (z.parse_word(t, s) for s in ("a", "b", "z"))
    lhs = z.multiply(t, z.multiply(t, z.invert(t, zl), a), zl)
    print("  z^-1*a*z == b:", z.equals(t, lhs, b))

    print("\n== common initial segments and commutation ==")
    g = z.parse_word(t, "a*b*a")
    h = z.parse_word(t, "a*b^-1")
    c = z.com(t, g, h)
    print(f"  com(a*b*a, a*b^-1) = {z.render(t, c)}")
    print("  commutes(a, z):", z.commutes(t, a, zl))
    C = z.centralizer(t, z.parse_word(t, "a*b*a^-1"))
    gens = [z.render(t, g) for g in C.gens]
    print(f"  centralizer(a*b*a^-1): c^-1*<{', '.join(gens)}>*c "
          f"with c = {z.render(t, C.conjugator)}")

    print("\n== Z^3 lengths in the free abelian tower of rank 3 ==")
    fa3 = z.free_abelian(3)
    show(fa3, "a")
    show(fa3, "z2")
    show(fa3, "z3")
    show(fa3, "a^2*z2^-1*z3")
    show(fa3, "a^-1*z3")           # negative base coordinate, positive top

    print("\n== building a tower by hand ==")
    base = z.free_tower(["p", "q"])
    t2 = z.extend_hnn(base, "s",
                      [z.parse_word(base, "p*q")],
                      [z.parse_word(base, "p^-1*q")])
    g = z.parse_word(t2, "s^-1*p*q*s")
    print(f"  s^-1*(p*q)*s -> {z.render(t2, g)}  (the image p^-1*q)")

    print("\n== rejected attachments ==")
    f = z.free_tower(["a"])
    try:
        z.extend_hnn(f, "w", [z.parse_word(f, "a")],
                     [z.parse_word(f, "a^-1")])
    except z.TowerRejection as e:
        print("  a -> a^-1 rejected:", e)
    try:
        z.extend_hnn(f, "w", [z.parse_word(f, "a")],
                     [z.parse_word(f, "a^2")])
    except z.TowerRejection as e:
        print("  a -> a^2 rejected:", e)


if __name__ == "__main__":
    main()
