"""Reducing a generating set with verified witnesses.

reduce_genset applies weight-decreasing rewriting moves (merge a shared
head, split off a proper head, cyclically reduce) until the set satisfies
the reducedness conditions.  Every move logs witnesses: product identities
that rebuild the replaced generator from the new set, checked by the
engine itself.
"""

import znfree as z


def reduce_and_report(t, words):
    print(f"  input: {', '.join(words)}")
    Y = z.GenSet(t, [z.parse_word(t, w) for w in words])
    R = z.reduce_genset(t, Y)
    print(f"  reduced: {', '.join(z.render(t, g) for g in R.pair_reps())}")
    print(f"  weight: {z.lambda_weight(R)}")
    for entry in R.witness_log:
        print(f"  step: {entry['op']} {' '.join(entry['params'])}".rstrip())
        for w in entry.get("witnesses", ()):
            elem, factors = w["rendered"]
            print(f"    witness: {elem} = {' * '.join(factors)}")
    print("  witnesses verify:", z.verify_witnesses(t, R))
    print("  reducedness violations:", z.is_reduced(t, R) or "none")
    print()


def main():
    t = z.t1()
    print("== T1 ==")
    # z*a and z share the head z; a merge move shortens the set.
    reduce_and_report(t, ["z*a", "z", "b"])
    # a conjugated generator is cyclically reduced away
    reduce_and_report(t, ["a*z*a^-1", "a*b"])

    print("== surface group of genus 2 ==")
    s = z.surface_orientable(2)
    reduce_and_report(s, ["x1*x2", "x1*x3", "x4"])


if __name__ == "__main__":
    main()
