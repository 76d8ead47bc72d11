#include "kleincm/igusa.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace kleincm {

namespace {

using Pattern = std::vector<std::pair<int, int>>;

std::vector<Pattern> orbit_of(const Pattern& seed) {
    std::array<int, 6> perm = {0, 1, 2, 3, 4, 5};
    std::set<Pattern> seen;
    do {
        Pattern p;
        p.reserve(seed.size());
        for (auto [i, j] : seed) {
            int a = perm[static_cast<size_t>(i)], b = perm[static_cast<size_t>(j)];
            p.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(p.begin(), p.end());
        seen.insert(std::move(p));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {seen.begin(), seen.end()};
}

}  // namespace

const std::vector<Pattern>& i2_orbit() {
    static const std::vector<Pattern> o = orbit_of({{0, 1}, {2, 3}, {4, 5}});
    return o;
}

const std::vector<Pattern>& i4_orbit() {
    static const std::vector<Pattern> o =
        orbit_of({{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
    return o;
}

const std::vector<Pattern>& i6_orbit() {
    static const std::vector<Pattern> o =
        orbit_of({{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}});
    return o;
}

std::pair<IgusaJ, AbsoluteInvariants> invariants_chain(const IgusaClebsch& ic) {
    IgusaJ j;
    j.j2 = ic.i2 / 8;
    j.j10 = ic.i10 / 4096;
    j.j4 = (j.j2 * j.j2 * 4 - ic.i4) / 96;
    j.j6 = (j.j2 * j.j2 * j.j2 * 8 - j.j2 * j.j4 * 160 - ic.i6) / 576;
    if (j.j10 == 0) throw std::domain_error("invariants_chain: J10 = 0");
    AbsoluteInvariants m;
    m.m1 = rat_pow(j.j2, 5) / j.j10;
    m.m2 = rat_pow(j.j2, 3) * j.j4 / j.j10;
    m.m3 = rat_pow(j.j2, 2) * j.j6 / j.j10;
    return {j, m};
}

CDPoint cd_from_i(const IgusaClebsch& ic) {
    CDPoint p;
    p.alpha = ic.i4 / 9;
    p.beta = (ic.i2 * ic.i4 * -1 + ic.i6 * 3) / 27;
    p.gamma = ic.i10 * 8;
    p.delta = ic.i2 * ic.i10 * make_rat(2, 3);
    return p;
}

IgusaClebsch i_from_cd(const CDPoint& p) {
    if (p.gamma == 0) throw std::domain_error("i_from_cd: gamma = 0");
    IgusaClebsch ic;
    ic.i4 = p.alpha * 9;
    ic.i10 = p.gamma / 8;
    ic.i2 = p.delta * 12 / p.gamma;
    ic.i6 = p.beta * 9 + ic.i2 * ic.i4 / 3;
    return ic;
}

CDPoint psi5(const Rat& a, const Rat& b, const Rat& c) {
    if (b == 0 && c == 0)
        throw std::domain_error("psi5: (1 : 0 : 0) is excluded from the domain");
    CDPoint p;
    p.alpha = a * a * make_rat(25, 36);
    p.beta = (a * a * a * make_rat(-125, 108) + b * make_rat(5, 4)) / 2;
    p.gamma = c / 32;
    p.delta = b * b * make_rat(25, 64) - a * c * make_rat(5, 96);
    return p;
}

CDPointBall psi5(const CBall& a, const CBall& b, const CBall& c) {
    if (b.contains_zero() && c.contains_zero() && !a.contains_zero())
        throw std::domain_error("psi5: (1 : 0 : 0) is excluded from the domain");
    CDPointBall p;
    p.alpha = (a * a).mul_rat(make_rat(25, 36));
    p.beta = ((a * a * a).mul_rat(make_rat(-125, 108)) + b.mul_rat(make_rat(5, 4)))
                 .mul_rat(make_rat(1, 2));
    p.gamma = c.mul_rat(make_rat(1, 32));
    p.delta = (b * b).mul_rat(make_rat(25, 64)) - (a * c).mul_rat(make_rat(5, 96));
    return p;
}

}  // namespace kleincm
