#include "fraczeta/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

namespace fraczeta {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

std::string fmtC(ComplexD s) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", s.real(), s.imag());
    return buf;
}

/// phi(z) = (e^z - 1)/z, entire; Taylor series below |z| = 0.5 avoids the
/// 0/0 cancellation.
ComplexD phi(ComplexD z) {
    if (std::abs(z) < 0.5) {
        ComplexD sum = 1.0, term = 1.0;
        for (int k = 1; k < 24; ++k) {
            term *= z / (double)(k + 1);
            sum += term;
            if (std::abs(term) < 1e-20) break;
        }
        return sum;
    }
    return (std::exp(z) - 1.0) / z;
}

/// phi'(z) = ((z - 1)e^z + 1)/z^2, with the matching series near 0.
ComplexD phiPrime(ComplexD z) {
    if (std::abs(z) < 0.5) {
        // phi(z) = sum z^k/(k+1)! ; phi'(z) = sum_{k>=1} k z^{k-1}/(k+1)!
        ComplexD sum = 0.5, zp = 1.0;
        double fact = 2.0;  // (k+1)! running
        for (int k = 2; k < 24; ++k) {
            zp *= z;
            fact *= (double)(k + 1);
            sum += (double)k * zp / fact;
            if (std::abs(zp) / fact < 1e-20) break;
        }
        return sum;
    }
    return ((z - 1.0) * std::exp(z) + 1.0) / (z * z);
}

ComplexD cpow(double a, ComplexD w) { return std::exp(w * std::log(a)); }

/// g(w) = (hi^w - lo^w)/w = lo^w * log(hi/lo) * phi(w log(hi/lo)); stable at
/// and near w = 0 (the removable point of the quotient form).
ComplexD gBand(double hi, double lo, ComplexD w) {
    const double lr = std::log(hi / lo);
    return cpow(lo, w) * lr * phi(w * lr);
}

ComplexD gBandPrime(double hi, double lo, ComplexD w) {
    const double lr = std::log(hi / lo);
    return std::log(lo) * gBand(hi, lo, w) + cpow(lo, w) * lr * lr * phiPrime(w * lr);
}

/// S(w) = sum_{i<j} r^{-iw} for the cyclotomic-stable lattice form.
ComplexD cycS(double r, int j, ComplexD w) {
    ComplexD s = 0.0;
    for (int i = 0; i < j; ++i) s += cpow(r, -(double)i * w);
    return s;
}

ComplexD cycSPrime(double r, int j, ComplexD w) {
    const double lr = std::log(r);
    ComplexD s = 0.0;
    for (int i = 1; i < j; ++i) s += -(double)i * lr * cpow(r, -(double)i * w);
    return s;
}

// ---- per-term values and derivatives (tube kind) ---------------------------

ComplexD simpleVal(const SimpleZetaTerm& t, ComplexD s) {
    const ComplexD w = s - t.sigma.value();
    return t.c * cpow(t.deltaEff, w) / w;
}

ComplexD simpleDer(const SimpleZetaTerm& t, ComplexD s) {
    const ComplexD w = s - t.sigma.value();
    const double ld = std::log(t.deltaEff);
    return t.c * cpow(t.deltaEff, w) * (w * ld - 1.0) / (w * w);
}

ComplexD latticeVal(const LatticeZetaTerm& t, ComplexD s) {
    const ComplexD w = s - t.sigma.value();
    const double l = std::log(t.base);
    if (t.cycJ > 0) {
        const double r = t.rhoHi / t.rhoLo;
        const ComplexD E = std::exp(w * (std::log(t.rhoHi) - (double)t.k0 * l));
        return t.c * E / (w * cycS(r, t.cycJ, w));
    }
    const ComplexD q = t.m * cpow(t.base, -w);
    return t.c * gBand(t.rhoHi, t.rhoLo, w) * std::pow(q, (double)t.k0) / (1.0 - q);
}

ComplexD latticeDer(const LatticeZetaTerm& t, ComplexD s) {
    const ComplexD w = s - t.sigma.value();
    const double l = std::log(t.base);
    if (t.cycJ > 0) {
        const double r = t.rhoHi / t.rhoLo;
        const double a = std::log(t.rhoHi) - (double)t.k0 * l;
        const ComplexD E = std::exp(w * a);
        const ComplexD S = cycS(r, t.cycJ, w), Sp = cycSPrime(r, t.cycJ, w);
        const ComplexD wS = w * S;
        return t.c * (a * E / wS - E * (S + w * Sp) / (wS * wS));
    }
    const ComplexD q = t.m * cpow(t.base, -w);
    const ComplexD G = std::pow(q, (double)t.k0);
    const ComplexD D = 1.0 - q;
    const ComplexD g = gBand(t.rhoHi, t.rhoLo, w);
    const ComplexD gp = gBandPrime(t.rhoHi, t.rhoLo, w);
    return t.c * ((gp * G + g * (-(double)t.k0 * l) * G) / D - g * G * l * q / (D * D));
}

ComplexD entireVal(const EntireBandTerm& t, ComplexD s) {
    return t.c * gBand(t.hi, t.lo, s - t.sigma.value());
}

ComplexD entireDer(const EntireBandTerm& t, ComplexD s) {
    return t.c * gBandPrime(t.hi, t.lo, s - t.sigma.value());
}

// ---- stable (Q - s) * term products for the distance kind ------------------
// Where a term's pole sits exactly at s = Q the raw product is 0 * inf; these
// forms are algebraically identical and analytic there.

bool simpleAtQ(const SimpleZetaTerm& t, const Rational& Q) { return t.sigma == Q; }

bool latticeAtQ(const LatticeZetaTerm& t, const Rational& Q) {
    return t.sigma + t.logBm == Q;
}

ComplexD simpleProdVal(const SimpleZetaTerm& t, const Rational& QR, double Q, ComplexD s) {
    const ComplexD w = s - t.sigma.value();
    if (simpleAtQ(t, QR)) return -t.c * cpow(t.deltaEff, w);
    return (Q - s) * t.c * cpow(t.deltaEff, w) / w;
}

ComplexD simpleProdDer(const SimpleZetaTerm& t, const Rational& QR, double Q, ComplexD s) {
    const ComplexD w = s - t.sigma.value();
    const double ld = std::log(t.deltaEff);
    if (simpleAtQ(t, QR)) return -t.c * cpow(t.deltaEff, w) * ld;
    return -simpleVal(t, s) + (Q - s) * t.c * cpow(t.deltaEff, w) * (w * ld - 1.0) / (w * w);
}

ComplexD latticeProdVal(const LatticeZetaTerm& t, const Rational& QR, double Q, ComplexD s) {
    if (!latticeAtQ(t, QR)) return (Q - s) * latticeVal(t, s);
    const ComplexD w = s - t.sigma.value();
    const double l = std::log(t.base);
    if (t.cycJ > 0) {
        // logBm = 0 here, so (Q - s) = -w cancels the explicit 1/w.
        const double r = t.rhoHi / t.rhoLo;
        const ComplexD E = std::exp(w * (std::log(t.rhoHi) - (double)t.k0 * l));
        return -t.c * E / cycS(r, t.cycJ, w);
    }
    // (Q - s) = -(w - w0) with w0 = logBm; u/(1 - q) = 1/(l*phi(-u*l)).
    const ComplexD u = w - t.logBm.value();
    const ComplexD q = t.m * cpow(t.base, -w);
    return -t.c * gBand(t.rhoHi, t.rhoLo, w) * std::pow(q, (double)t.k0) / (l * phi(-u * l));
}

ComplexD latticeProdDer(const LatticeZetaTerm& t, const Rational& QR, double Q, ComplexD s) {
    if (!latticeAtQ(t, QR)) return -latticeVal(t, s) + (Q - s) * latticeDer(t, s);
    const ComplexD w = s - t.sigma.value();
    const double l = std::log(t.base);
    if (t.cycJ > 0) {
        const double r = t.rhoHi / t.rhoLo;
        const double a = std::log(t.rhoHi) - (double)t.k0 * l;
        const ComplexD E = std::exp(w * a);
        const ComplexD S = cycS(r, t.cycJ, w), Sp = cycSPrime(r, t.cycJ, w);
        return -t.c * (a * E / S - E * Sp / (S * S));
    }
    const ComplexD u = w - t.logBm.value();
    const ComplexD q = t.m * cpow(t.base, -w);
    const ComplexD G = std::pow(q, (double)t.k0);
    const ComplexD A = gBand(t.rhoHi, t.rhoLo, w) * G;
    const ComplexD Ap =
        gBandPrime(t.rhoHi, t.rhoLo, w) * G + gBand(t.rhoHi, t.rhoLo, w) * (-(double)t.k0 * l) * G;
    const ComplexD ph = phi(-u * l), php = phiPrime(-u * l);
    const ComplexD B = 1.0 / ph;
    const ComplexD Bp = l * php / (ph * ph);
    return -(t.c / l) * (Ap * B + A * Bp);
}

} // namespace

// ---- continuation -----------------------------------------------------------

MeromorphicZeta continue_tube_zeta(const TubeFunction& tf, const Rational& Q) {
    MeromorphicZeta z;
    z.kind = MeromorphicZeta::Kind::Tube;
    z.QRat = Q;
    z.Q = Q.value();
    z.delta = tf.delta;

    for (const auto& tm : tf.terminal)
        z.simple.push_back({tm.c, Q - tm.alpha, tf.delta});

    for (const auto& fam : tf.ladders) {
        const double l = std::log(fam.base);
        for (const auto& tm : fam.terms) {
            const Rational sigma = Q - tm.alpha;
            if (std::abs(tm.m - 1.0) <= 1e-14) {
                if (std::abs(fam.rhoHi - fam.base * fam.rhoLo) <= 1e-12 * fam.rhoHi) {
                    // m = 1 on gapless bands: the geometric sum telescopes to a
                    // single terminal-type term with cutoff rhoHi * base^-k0.
                    z.simple.push_back({tm.c, sigma, fam.rhoHi * std::pow(fam.base, -(double)fam.k0)});
                    continue;
                }
                LatticeZetaTerm lt{tm.c, sigma, fam.rhoHi, fam.rhoLo, fam.base, 1.0,
                                   fam.k0, Rational(0), 0};
                // If base = (hi/lo)^j the raw form has 0/0 points at members
                // with j | n; the cyclotomic rewrite is stable there.
                const double r = fam.rhoHi / fam.rhoLo;
                const int j = (int)std::llround(l / std::log(r));
                if (j >= 1 && j <= 64 && std::abs(std::pow(r, j) - fam.base) <= 1e-12 * fam.base)
                    lt.cycJ = j;
                z.lattice.push_back(lt);
            } else {
                auto lb = rational_log(tm.m, fam.base, 24);
                if (!lb)
                    throw std::domain_error(
                        "continue_tube_zeta: growth factor " + std::to_string(tm.m) +
                        " is not an exact rational power of band base " + std::to_string(fam.base) +
                        "; the pole lattice has no exact rational real part");
                z.lattice.push_back({tm.c, sigma, fam.rhoHi, fam.rhoLo, fam.base, tm.m,
                                     fam.k0, *lb, 0});
            }
        }
    }

    for (const auto& p : tf.pieces)
        for (const auto& tm : p.terms)
            z.entire.push_back({tm.c, Q - tm.alpha, p.lo, p.hi});

    return z;
}

MeromorphicZeta to_distance_zeta(const MeromorphicZeta& tubeZeta, double measureAtDelta) {
    if (tubeZeta.kind != MeromorphicZeta::Kind::Tube)
        throw std::domain_error("to_distance_zeta: input must be a tube zeta");
    MeromorphicZeta z = tubeZeta;
    z.kind = MeromorphicZeta::Kind::Distance;
    z.measureAtDelta = measureAtDelta;
    return z;
}

// ---- pole structure ---------------------------------------------------------

ComplexD LatticeFamily::memberResidue(int n) const {
    ComplexD total = (n == 0) ? foldedSimple : ComplexD(0.0);
    double sumAbs = std::abs(total);
    for (const auto& t : terms) {
        const double l = std::log(t.base);
        const ComplexD wStar(t.wStarRe.value(), kTwoPi * (double)n / l);
        ComplexD r;
        if (n == 0 && t.wStarRe == Rational(0)) {
            r = t.c * std::log(t.hi / t.lo) / l;
        } else {
            const double lr = std::log(t.hi / t.lo);
            const ComplexD rw = std::exp(wStar * lr);
            const ComplexD num = cpow(t.lo, wStar) * (rw - 1.0);
            r = t.c * num / (wStar * l);
            // Roots of unity make (hi/lo)^w* exactly 1 at some members; snap
            // the ~1e-16 floating residue that leaves behind to an exact 0.
            const double scale =
                std::abs(t.c) * std::abs(cpow(t.lo, wStar)) * std::max(std::abs(rw), 1.0) /
                (std::abs(wStar) * l);
            if (std::abs(r) < 1e-12 * scale) r = 0.0;
        }
        total += r;
        sumAbs += std::abs(r);
    }
    // Exact cancellation across terms is a removable point, not a pole.
    if (std::abs(total) < 1e-9 * sumAbs) total = 0.0;
    if (dropN0 && n == 0) return 0.0;
    if (distanceScaled) {
        const ComplexD sStar(realPart.value(), spacing * (double)n);
        total *= (QForScale - sStar);
    }
    return total;
}

bool LatticeFamily::isPole(int n) const { return memberResidue(n) != ComplexD(0.0); }

Pole LatticeFamily::member(int n) const {
    const ComplexD r = memberResidue(n);
    if (r == ComplexD(0.0))
        throw NotAPoleError("lattice member n=" + std::to_string(n) + " at Re s = " +
                            realPart.str() + " is not a pole (zero residue)");
    return Pole{realPart, spacing * (double)n, n, 1, r};
}

PoleSet poles(const MeromorphicZeta& z) {
    PoleSet ps;
    const bool dist = (z.kind == MeromorphicZeta::Kind::Distance);

    // Group lattice terms into families keyed by exact real part + spacing.
    for (const auto& t : z.lattice) {
        const Rational rp = t.sigma + t.logBm;
        const double spacing = kTwoPi / std::log(t.base);
        LatticeFamily* fam = nullptr;
        for (auto& f : ps.families)
            if (f.realPart == rp && std::abs(f.spacing - spacing) <= 1e-12 * spacing) {
                fam = &f;
                break;
            }
        if (!fam) {
            ps.families.emplace_back();
            fam = &ps.families.back();
            fam->realPart = rp;
            fam->spacing = spacing;
        }
        fam->terms.push_back({t.c, t.rhoHi, t.rhoLo, t.base, t.logBm, t.sigma.value()});
    }

    // Merge coincident simple poles, then fold any that sit on a family's
    // real part into that family's n = 0 member.
    std::map<std::pair<long long, long long>, std::pair<Rational, std::pair<double, double>>> acc;
    for (const auto& t : z.simple) {
        auto key = std::make_pair(t.sigma.num(), t.sigma.den());
        auto it = acc.find(key);
        if (it == acc.end())
            acc[key] = {t.sigma, {t.c, std::abs(t.c)}};
        else {
            it->second.second.first += t.c;
            it->second.second.second += std::abs(t.c);
        }
    }
    for (const auto& [key, val] : acc) {
        const Rational& sig = val.first;
        const double sum = val.second.first, sumAbs = val.second.second;
        LatticeFamily* fam = nullptr;
        for (auto& f : ps.families)
            if (f.realPart == sig) { fam = &f; break; }
        if (fam) {
            fam->foldedSimple += sum;
            continue;
        }
        if (std::abs(sum) < 1e-9 * sumAbs) {
            ps.cancelled.push_back(sig);
            continue;
        }
        if (dist && sig == z.QRat) {
            // (Q - s) kills the tube pole at s = Q; the point is analytic.
            ps.removable.push_back(sig);
            continue;
        }
        Pole p;
        p.re = sig;
        p.im = 0.0;
        p.n = 0;
        p.order = 1;
        p.residue = dist ? ComplexD(sum * (z.Q - sig.value())) : ComplexD(sum);
        ps.isolated.push_back(p);
    }

    if (dist)
        for (auto& f : ps.families) {
            f.distanceScaled = true;
            f.QForScale = z.Q;
            if (f.realPart == z.QRat) {
                if (f.memberResidue(0) != ComplexD(0.0) || f.foldedSimple != ComplexD(0.0))
                    ps.removable.push_back(f.realPart);
                f.dropN0 = true;
            }
        }

    // Removable points: sigma of lattice terms with m != 1 (their w = 0 is a
    // 0/0 of the raw quotient) where the total function is analytic.
    for (const auto& t : z.lattice) {
        if (t.logBm == Rational(0)) continue;
        const Rational sig = t.sigma;
        bool isPoleHere = false;
        for (const auto& p : ps.isolated)
            if (p.re == sig) { isPoleHere = true; break; }
        for (const auto& f : ps.families)
            if (f.realPart == sig && f.isPole(0)) { isPoleHere = true; break; }
        if (!isPoleHere) ps.removable.push_back(sig);
    }

    std::sort(ps.isolated.begin(), ps.isolated.end(),
              [](const Pole& a, const Pole& b) { return a.re < b.re; });
    std::sort(ps.families.begin(), ps.families.end(),
              [](const LatticeFamily& a, const LatticeFamily& b) { return a.realPart < b.realPart; });
    std::sort(ps.removable.begin(), ps.removable.end());
    ps.removable.erase(std::unique(ps.removable.begin(), ps.removable.end()), ps.removable.end());
    std::sort(ps.cancelled.begin(), ps.cancelled.end());
    return ps;
}

std::vector<Pole> PoleSet::enumerate(double imMax) const {
    std::vector<Pole> out = isolated;
    for (const auto& f : families) {
        const int nMax = (int)std::floor(imMax / f.spacing + 1e-12);
        for (int n = -nMax; n <= nMax; ++n)
            if (f.isPole(n)) out.push_back(f.member(n));
    }
    std::sort(out.begin(), out.end(), [](const Pole& a, const Pole& b) {
        if (a.re != b.re) return b.re < a.re;
        return a.im < b.im;
    });
    // A family's n = 0 member can coincide with an isolated pole only if the
    // fold step failed; keep a defensive dedup on exact (re, im) pairs.
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Pole& a, const Pole& b) {
                              return a.re == b.re && a.im == b.im;
                          }),
              out.end());
    return out;
}

// ---- evaluation -------------------------------------------------------------

namespace {

void guardProximity(const MeromorphicZeta& z, const PoleSet& ps, ComplexD s, double tol) {
    for (const auto& p : ps.isolated) {
        const ComplexD loc(p.re.value(), p.im);
        if (std::abs(s - loc) < tol)
            throw EvalNearPoleError("evaluation point " + fmtC(s) + " lies within " +
                                    std::to_string(tol) + " of the pole at " + fmtC(loc));
    }
    for (const auto& f : ps.families) {
        const int n = (int)std::llround(s.imag() / f.spacing);
        for (int nn = n - 1; nn <= n + 1; ++nn) {
            const ComplexD loc(f.realPart.value(), f.spacing * (double)nn);
            if (std::abs(s - loc) < tol && f.isPole(nn) && !(f.dropN0 && nn == 0))
                throw EvalNearPoleError("evaluation point " + fmtC(s) + " lies within " +
                                        std::to_string(tol) + " of the lattice pole at " +
                                        fmtC(loc));
        }
    }
    (void)z;
}

} // namespace

ComplexD eval_zeta(const MeromorphicZeta& z, ComplexD s, double proximityTol) {
    return eval_zeta(z, s, proximityTol, poles(z));
}

ComplexD eval_zeta_deriv(const MeromorphicZeta& z, ComplexD s, double proximityTol) {
    return eval_zeta_deriv(z, s, proximityTol, poles(z));
}

ComplexD eval_zeta(const MeromorphicZeta& z, ComplexD s, double proximityTol, const PoleSet& ps) {
    if (proximityTol > 0.0) guardProximity(z, ps, s, proximityTol);
    ComplexD v = 0.0;
    if (z.kind == MeromorphicZeta::Kind::Tube) {
        for (const auto& t : z.simple) v += simpleVal(t, s);
        for (const auto& t : z.lattice) v += latticeVal(t, s);
        for (const auto& t : z.entire) v += entireVal(t, s);
        return v;
    }
    v = z.measureAtDelta * cpow(z.delta, s - z.Q);
    for (const auto& t : z.simple) v += simpleProdVal(t, z.QRat, z.Q, s);
    for (const auto& t : z.lattice) v += latticeProdVal(t, z.QRat, z.Q, s);
    for (const auto& t : z.entire) v += (z.Q - s) * entireVal(t, s);
    return v;
}

ComplexD eval_zeta_deriv(const MeromorphicZeta& z, ComplexD s, double proximityTol,
                         const PoleSet& ps) {
    if (proximityTol > 0.0) guardProximity(z, ps, s, proximityTol);
    ComplexD v = 0.0;
    if (z.kind == MeromorphicZeta::Kind::Tube) {
        for (const auto& t : z.simple) v += simpleDer(t, s);
        for (const auto& t : z.lattice) v += latticeDer(t, s);
        for (const auto& t : z.entire) v += entireDer(t, s);
        return v;
    }
    v = z.measureAtDelta * cpow(z.delta, s - z.Q) * std::log(z.delta);
    for (const auto& t : z.simple) v += simpleProdDer(t, z.QRat, z.Q, s);
    for (const auto& t : z.lattice) v += latticeProdDer(t, z.QRat, z.Q, s);
    for (const auto& t : z.entire) v += -entireVal(t, s) + (z.Q - s) * entireDer(t, s);
    return v;
}

ComplexD residue(const MeromorphicZeta& z, ComplexD s0, double matchTol) {
    const PoleSet ps = poles(z);
    const double tol = matchTol * std::max(1.0, std::abs(s0));
    for (const auto& p : ps.isolated) {
        const ComplexD loc(p.re.value(), p.im);
        if (std::abs(s0 - loc) <= tol) {
            if (p.order >= 2)
                throw UnsupportedPoleOrderError("pole at " + fmtC(loc) + " has order " +
                                                std::to_string(p.order) +
                                                "; only simple poles are supported");
            return p.residue;
        }
    }
    for (const auto& f : ps.families) {
        const int n = (int)std::llround(s0.imag() / f.spacing);
        for (int nn = n - 1; nn <= n + 1; ++nn) {
            const ComplexD loc(f.realPart.value(), f.spacing * (double)nn);
            if (std::abs(s0 - loc) <= tol) {
                if (f.dropN0 && nn == 0) continue;  // analytic point (handled below)
                const ComplexD r = f.memberResidue(nn);
                if (r != ComplexD(0.0)) return r;
                throw NotAPoleError("lattice member at " + fmtC(loc) +
                                    " has zero residue (analytic point, not a pole)");
            }
        }
    }
    for (const auto& r : ps.removable)
        if (std::abs(s0 - ComplexD(r.value(), 0.0)) <= tol)
            throw NotAPoleError("point " + fmtC(s0) + " is a removable singularity (Re s = " +
                                r.str() + "), not a pole");
    for (const auto& r : ps.cancelled)
        if (std::abs(s0 - ComplexD(r.value(), 0.0)) <= tol)
            throw NotAPoleError("point " + fmtC(s0) +
                                " is analytic: residues of coinciding terms cancel exactly");
    throw NotAPoleError("no pole at " + fmtC(s0));
}

PrincipalDimensions principal_dimensions(const PoleSet& ps) {
    PrincipalDimensions pd;
    bool have = false;
    Rational best(0);
    for (const auto& p : ps.isolated)
        if (!have || best < p.re) { best = p.re; have = true; }
    for (const auto& f : ps.families) {
        bool nonEmpty = false;
        for (int n = -64; n <= 64 && !nonEmpty; ++n)
            if (f.isPole(n)) nonEmpty = true;
        if (nonEmpty && (!have || best < f.realPart)) { best = f.realPart; have = true; }
        if (nonEmpty && have && best == f.realPart) { /* handled below */ }
    }
    if (!have) throw std::domain_error("principal_dimensions: the function has no poles");
    pd.D = best;
    for (const auto& f : ps.families)
        if (f.realPart == best) {
            bool nonEmpty = false;
            for (int n = -64; n <= 64 && !nonEmpty; ++n)
                if (f.isPole(n)) nonEmpty = true;
            if (nonEmpty) {
                pd.hasFamily = true;
                pd.spacing = f.spacing;
                if (f.isPole(0)) { pd.realPoleAtD = true; pd.residueAtD = f.memberResidue(0); }
            }
        }
    for (const auto& p : ps.isolated)
        if (p.re == best) { pd.realPoleAtD = true; pd.residueAtD = p.residue; }
    return pd;
}

} // namespace fraczeta
