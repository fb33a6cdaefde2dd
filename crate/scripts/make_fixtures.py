"""Build the fixture catalog by explicit perturbation.

Every curve is written with exact rational coefficients.  The quintics are
L*Q + eps*l*Q2 where Q is a four-oval quartic (two crossing ellipses pulled
apart) and Q, Q2 both vanish on two symmetric orbits of rational points, so
those 16 points lie on the quintic exactly.

Run from the repository root:  python3 scripts/make_fixtures.py
"""
import json
import sys
from pathlib import Path

import sympy as sp

x, y, z = sp.symbols("x y z")
c1, c2 = sp.symbols("c1 c2")
R = sp.Rational
OUT = Path(__file__).resolve().parent.parent / "crates" / "core" / "fixtures"


def orbit(a, b):
    pts = []
    for (u, v) in [(a, b), (a, -b), (-a, b), (-a, -b), (b, a), (-b, a), (b, -a), (-b, -a)]:
        pts.append((u, v))
    return pts


def primitive(expr):
    poly = sp.Poly(sp.expand(expr), x, y, z)
    den = sp.ilcm(*[sp.Rational(c).q for c in poly.coeffs()])
    poly = sp.Poly(sp.expand(expr * den), x, y, z)
    g = sp.igcd(*[int(c) for c in poly.coeffs()])
    poly = sp.Poly(sp.expand(expr * den / g), x, y, z)
    lead = poly.coeffs()[0]
    if lead < 0:
        poly = -poly
    return poly


def js(s):
    return json.dumps(s, ensure_ascii=False)


def render(poly, name, notes, points):
    """The canonical text layout, identical to what the Rust writer emits."""
    recs = []
    for (a, b, c), k in sorted(poly.terms(), key=lambda t: t[0], reverse=True):
        k = sp.Rational(k)
        recs.append(f'    {{"a": {a}, "b": {b}, "c": {c}, "num": {k.p}, "den": {k.q}}}')
    out = "{\n  \"format_version\": 1,\n"
    out += f"  \"degree\": {poly.total_degree()},\n"
    out += "  \"coefficients\": [\n" + ",\n".join(recs) + "\n  ],\n"
    fields = [f"\n    \"name\": {js(name)}", f"\n    \"notes\": {js(notes)}"]
    if points:
        rows = [f"      [{js(str(u))}, {js(str(v))}, \"1\"]" for (u, v) in points]
        fields.append("\n    \"points\": [\n" + ",\n".join(rows) + "\n    ]")
    out += "  \"metadata\": {" + ",".join(fields) + "\n  }\n}\n"
    return out


def write(name, notes, expr, points=()):
    poly = primitive(expr)
    for (u, v) in points:
        assert poly.eval({x: u, y: v, z: 1}) == 0, (name, u, v)
    path = OUT / f"{name}.json"
    path.write_text(render(poly, name, notes, points))
    print("wrote", path.name, "degree", poly.total_degree(), "terms", len(poly.terms()))
    return poly


# two ellipses crossing at (+-12/5, +-12/5)
e1 = x**2 / 16 + y**2 / 9 - z**2
e2 = x**2 / 9 + y**2 / 16 - z**2
r2 = x**2 + y**2
P1, P2 = (R(3), R(1)), (R(31, 8), R(1, 2))
PTS = orbit(*P1) + orbit(*P2)


def through_orbits(base, extra):
    """base + c1*extra[0] + c2*extra[1] vanishing at P1 and P2."""
    e = base + c1 * extra[0] + c2 * extra[1]
    sol = sp.solve([e.subs({x: p[0], y: p[1], z: 1}) for p in (P1, P2)], [c1, c2], dict=True)[0]
    return sp.expand(e.subs(sol)), sol


harnack, hsol = through_orbits(e1 * e2, [z**4, r2 * z**2 / 16])
other, osol = through_orbits((x**4 + y**4) / 256, [z**4, r2 * z**2 / 16])


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    write("conic", "circle x^2 + y^2 = z^2", x**2 + y**2 - z**2, [(R(3, 5), R(4, 5)), (R(-3, 5), R(4, 5)), (R(0), R(1))])
    write("empty-conic", "x^2 + y^2 + z^2, no real points", x**2 + y**2 + z**2)
    write("cubic-oval", "y^2 = x^3 - x, one oval and a pseudo-line", y**2 * z - x**3 + x * z**2,
          [(R(-1), R(0)), (R(0), R(0)), (R(1), R(0))])
    write("cubic-no-oval", "y^2 = x^3 + x, pseudo-line only", y**2 * z - x**3 - x * z**2, [(R(0), R(0))])
    write("harnack-quartic",
          "product of the ellipses x^2/16 + y^2/9 = 1 and x^2/9 + y^2/16 = 1 plus a small positive "
          f"symmetric term {hsol[c1]} z^4 + {hsol[c2]} (x^2 + y^2) z^2 / 16, chosen so that the symmetry "
          f"orbits of (3, 1) and (31/8, 1/2) lie on the curve; four ovals",
          harnack, PTS)
    write("empty-quartic", "Fermat quartic x^4 + y^4 + z^4", x**4 + y**4 + z**4)
    shifted = (x - R(7, 10) * z)**2 / 9 + y**2 / 16 - z**2
    write("three-oval-quartic",
          "x^2/16 + y^2/9 = 1 times (x - 7/10)^2/9 + y^2/16 = 1, plus 1/50 z^4; the thin right lobe "
          "disappears and three ovals remain",
          e1 * shifted + R(1, 50) * z**4)
    eps = R(1, 2000)
    ell = x + 2 * y + 3 * z
    write("quintic-nonconvex",
          "L*Q + eps*l*Q2 with Q the Harnack quartic, L: 5x = 12z through the crossing points of the "
          "ellipses, l = x + 2y + 3z, eps = 1/2000, Q2 = another symmetric quartic through the same "
          "16 rational points; pseudo-line near L and four ovals, one of them inside the triangle of the others",
          (x - R(12, 5) * z) * harnack + eps * ell * other, PTS)
    write("quintic-convex",
          "same construction with L: x = 5z beyond the ovals; the four ovals sit at the corners of a "
          "convex quadrilateral in the complement of the pseudo-line",
          (x - 5 * z) * harnack + eps * ell * other, PTS)
    ea = x**2 + 2 * y**2 - z**2
    eb = 2 * (x - 4 * z)**2 + y**2 - z**2
    write("quintic-three-components",
          "(x + 6z)(x^2 + 2y^2 - z^2)(2(x - 4z)^2 + y^2 - z^2) + 1/100 (x^5 + y^5 + z^5); two ovals and a pseudo-line",
          (x + 6 * z) * ea * eb + R(1, 100) * (x**5 + y**5 + z**5))


if __name__ == "__main__":
    sys.exit(main())
