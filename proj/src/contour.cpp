#include "fraczeta/contour.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

namespace fraczeta {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmtC(ComplexD s) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.6g%+.6gi", s.real(), s.imag());
    return buf;
}

/// All poles with |Im| <= imWindow, for clearance checks.
std::vector<ComplexD> polesNear(const PoleSet& ps, double imWindow) {
    std::vector<ComplexD> out;
    for (const auto& p : ps.enumerate(imWindow)) out.emplace_back(p.re.value(), p.im);
    return out;
}

double distToSegment(ComplexD p, ComplexD a, ComplexD b) {
    const ComplexD ab = b - a;
    const double len2 = std::norm(ab);
    double t = len2 > 0.0 ? ((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

struct SimpsonCtx {
    std::function<ComplexD(ComplexD)> f;
    int evals = 0;
};

ComplexD simpsonRec(SimpsonCtx& ctx, ComplexD a, ComplexD b, ComplexD fa, ComplexD fm,
                    ComplexD fb, ComplexD whole, double tol, int depth) {
    const ComplexD m = 0.5 * (a + b);
    const ComplexD lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const ComplexD flm = ctx.f(lm), frm = ctx.f(rm);
    ctx.evals += 2;
    const ComplexD h = b - a;
    const ComplexD left = (h / 12.0) * (fa + 4.0 * flm + fm);
    const ComplexD right = (h / 12.0) * (fm + 4.0 * frm + fb);
    const ComplexD sum = left + right;
    if (depth <= 0)
        throw ContourInstabilityError("contour integral failed to converge (integrand too "
                                      "singular near the path)");
    if (std::abs(sum - whole) <= 15.0 * tol) return sum + (sum - whole) / 15.0;
    return simpsonRec(ctx, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
           simpsonRec(ctx, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

ComplexD integrateSegment(const std::function<ComplexD(ComplexD)>& f, ComplexD a, ComplexD b,
                          double tol) {
    SimpsonCtx ctx{f, 0};
    const ComplexD m = 0.5 * (a + b);
    const ComplexD fa = f(a), fm = f(m), fb = f(b);
    const ComplexD whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
    return simpsonRec(ctx, a, b, fa, fm, fb, whole, tol, 28);
}

} // namespace

double winding_number(const MeromorphicZeta& z, double reLo, double reHi, double imLo,
                      double imHi, double minClearance) {
    if (!(reLo < reHi) || !(imLo < imHi))
        throw std::domain_error("winding_number: degenerate rectangle");
    const PoleSet ps = poles(z);
    const ComplexD c0(reLo, imLo), c1(reHi, imLo), c2(reHi, imHi), c3(reLo, imHi);
    double maxSpacing = 0.0;
    for (const auto& f : ps.families) maxSpacing = std::max(maxSpacing, f.spacing);
    for (ComplexD p : polesNear(ps, std::max(std::abs(imLo), std::abs(imHi)) + maxSpacing + 1.0)) {
        const double d = std::min({distToSegment(p, c0, c1), distToSegment(p, c1, c2),
                                   distToSegment(p, c2, c3), distToSegment(p, c3, c0)});
        if (d < minClearance)
            throw std::domain_error("winding_number: pole at " + fmtC(p) +
                                    " lies within " + std::to_string(minClearance) +
                                    " of the contour");
    }
    auto f = [&](ComplexD s) {
        return eval_zeta_deriv(z, s, 0.0, ps) / eval_zeta(z, s, 0.0, ps);
    };
    const double tol = 2.5e-10;
    const ComplexD total = integrateSegment(f, c0, c1, tol) + integrateSegment(f, c1, c2, tol) +
                           integrateSegment(f, c2, c3, tol) + integrateSegment(f, c3, c0, tol);
    const ComplexD w = total / ComplexD(0.0, 2.0 * kPi);
    return w.real();
}

ComplexD circle_residue(const MeromorphicZeta& z, ComplexD center, double radius) {
    if (!(radius > 0.0)) throw std::domain_error("circle_residue: radius must be positive");
    const PoleSet ps = poles(z);
    double maxSpacing = 0.0;
    for (const auto& f : ps.families) maxSpacing = std::max(maxSpacing, f.spacing);
    for (ComplexD p : polesNear(ps, std::abs(center.imag()) + radius + maxSpacing + 1.0)) {
        const double d = std::abs(p - center);
        if (d <= 1e-12) continue;  // the target pole at the center
        if (d < radius * (1.0 + 1e-3))
            throw ContourInstabilityError("circle_residue: another pole at " + fmtC(p) +
                                          " lies inside or on the integration circle");
    }
    // (1/2*pi*i) Int Z ds = (1/N) sum Z(c + r e^{i th_k}) r e^{i th_k}; the
    // trapezoid rule on a circle converges exponentially, so double N until
    // two successive values agree.
    auto trap = [&](int N) {
        ComplexD acc = 0.0;
        for (int k = 0; k < N; ++k) {
            const double th = 2.0 * kPi * (double)k / (double)N;
            const ComplexD e(std::cos(th), std::sin(th));
            acc += eval_zeta(z, center + radius * e, 0.0, ps) * radius * e;
        }
        return acc / (double)N;
    };
    int N = 64;
    ComplexD prev = trap(N);
    while (N < 4096) {
        N *= 2;
        const ComplexD cur = trap(N);
        if (std::abs(cur - prev) <= 1e-10 * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

std::vector<ConfirmedPole> confirm_poles_numeric(const MeromorphicZeta& z, int familyMembers,
                                                 double tol) {
    const PoleSet ps = poles(z);
    struct Target {
        ComplexD loc;
        ComplexD res;
    };
    std::vector<Target> targets;
    for (const auto& p : ps.isolated) targets.push_back({{p.re.value(), p.im}, p.residue});
    for (const auto& f : ps.families)
        for (int n = -familyMembers; n <= familyMembers; ++n)
            if (f.isPole(n) && !(f.dropN0 && n == 0)) {
                bool dup = false;  // n = 0 members never duplicate isolated poles (folded)
                for (const auto& t : targets)
                    if (std::abs(t.loc - ComplexD(f.realPart.value(), f.spacing * n)) < 1e-12)
                        dup = true;
                if (!dup)
                    targets.push_back({{f.realPart.value(), f.spacing * (double)n},
                                       f.memberResidue(n)});
            }

    double maxSpacing = 0.0, maxIm = 0.0;
    for (const auto& f : ps.families) maxSpacing = std::max(maxSpacing, f.spacing);
    for (const auto& t : targets) maxIm = std::max(maxIm, std::abs(t.loc.imag()));
    const std::vector<ComplexD> all = polesNear(ps, maxIm + 2.0 * maxSpacing + 2.0);

    std::vector<ConfirmedPole> out;
    for (const auto& t : targets) {
        double minDist = 1e30;
        for (ComplexD p : all)
            if (std::abs(p - t.loc) > 1e-12) minDist = std::min(minDist, std::abs(p - t.loc));
        // Shrink the rectangle until it isolates the pole.  Small rectangles
        // are needed not just to exclude other poles but also to exclude
        // zeros of the function: members with tiny residues attract a zero
        // at distance comparable to |residue| / |analytic part|, and the
        // winding number counts zeros minus poles.
        double h = std::min(0.35 * minDist, 0.5);
        bool ok = false;
        double wFinal = 0.0;
        for (; h >= 1e-5 && !ok; h *= 0.5) {
            double w;
            try {
                w = winding_number(z, t.loc.real() - h, t.loc.real() + h, t.loc.imag() - h,
                                   t.loc.imag() + h, 0.2 * h);
            } catch (const std::exception&) {
                continue;  // pole too close to this rectangle; shrink and retry
            }
            const double r = std::round(w);
            if (std::abs(w - r) <= 0.05 && (int)r == -1) {
                ok = true;
                wFinal = w;
            }
        }
        if (!ok)
            throw ContourInstabilityError(
                "confirm_poles_numeric: no admissible winding rectangle around pole at " +
                fmtC(t.loc));
        ConfirmedPole cp;
        cp.location = t.loc;
        cp.symbolicResidue = t.res;
        cp.numericResidue = circle_residue(z, t.loc, std::min(0.35 * minDist, 0.25));
        cp.residueError = std::abs(cp.numericResidue - cp.symbolicResidue);
        cp.enclosedCount = 1;
        (void)wFinal;
        if (cp.residueError > tol * std::max(1.0, std::abs(cp.symbolicResidue)))
            throw std::runtime_error("confirm_poles_numeric: circle-integral residue " +
                                     fmtC(cp.numericResidue) + " at " + fmtC(t.loc) +
                                     " disagrees with the closed form " +
                                     fmtC(cp.symbolicResidue));
        out.push_back(cp);
    }
    return out;
}

} // namespace fraczeta
