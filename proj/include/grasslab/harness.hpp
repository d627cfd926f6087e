#pragma once

// Named verification suites over one Grassmannian, and the reports they
// produce. A fixed (suite, p, n, seed) gives a byte-identical report unless
// timings are requested.

#include "grasslab/cache.hpp"
#include "grasslab/reguli.hpp"

#include "json.hpp"

#include <array>
#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace grasslab {

inline constexpr std::string_view kVersion = "1.0.0";

inline const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"cliques", "pencils",          "distadj", "metrics",  "ringline",
                                                "reguli",  "zreg-equivalence", "lemmas",  "automorph"};
    return names;
}

/// Suites that sweep all pairs or triples refuse Grassmannians above this size.
inline constexpr std::size_t kSweepLimit = 1000;

struct SuiteConfig {
    std::string suite = "all";
    std::optional<int> p;
    std::optional<int> n;
    std::optional<std::size_t> sample; ///< overrides every randomized sample size
    std::uint64_t seed = 20240611;
    std::optional<std::filesystem::path> cache_dir;
    bool timings = false;
};

struct Check {
    std::string name;
    bool passed = true;
    std::string detail;
    nlohmann::ordered_json counts = nlohmann::ordered_json::object();
    std::string witness;
    double elapsed_ms = 0;
};

struct SuiteRun {
    std::string suite;
    int p = 0;
    int n = 0;
    std::vector<Check> checks;

    [[nodiscard]] bool passed() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
    }
};

struct Report {
    std::string suite;
    std::uint64_t seed = 0;
    bool timings = false;
    std::vector<SuiteRun> runs;

    [[nodiscard]] bool passed() const
    {
        return std::all_of(runs.begin(), runs.end(), [](const SuiteRun& r) { return r.passed(); });
    }
    [[nodiscard]] std::size_t check_count() const
    {
        std::size_t c = 0;
        for (const auto& r : runs) c += r.checks.size();
        return c;
    }
    [[nodiscard]] std::size_t failed_count() const
    {
        std::size_t c = 0;
        for (const auto& r : runs)
            for (const auto& k : r.checks) c += !k.passed;
        return c;
    }
};

namespace detail {

inline std::string describe(const GrassmannianIndex& g, Handle h)
{
    return "#" + std::to_string(h) + " " + g.element(h).to_string();
}

inline std::string describe(const GrassmannianIndex& g, std::span<const Handle> hs)
{
    std::string s = "{";
    for (std::size_t i = 0; i < hs.size(); ++i) s += (i ? ", " : "") + describe(g, hs[i]);
    return s + "}";
}

inline std::string describe(const std::vector<Subspace>& s)
{
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + s[i].to_string();
    return out + "}";
}

using Triple = std::array<Handle, 3>;

inline std::size_t pick(std::mt19937_64& rng, std::size_t bound) { return std::size_t(rng() % bound); }

/// Random distant clique grown greedily to the given size (may stop short).
inline std::vector<Handle> random_distant_clique(const GrassmannianIndex& g, std::mt19937_64& rng, std::size_t size)
{
    std::vector<Handle> c{Handle(pick(rng, g.size()))};
    BitRow cand = g.row(Relation::distant, c[0]);
    while (c.size() < size && cand.any()) {
        auto idx = cand.indices();
        Handle x = Handle(idx[pick(rng, idx.size())]);
        c.push_back(x);
        cand &= g.row(Relation::distant, x);
    }
    std::sort(c.begin(), c.end());
    return c;
}

inline std::size_t count_distant_triples(const GrassmannianIndex& g)
{
    std::size_t total = 0;
    for (std::size_t a = 0; a < g.size(); ++a) {
        const BitRow& fa = g.row(Relation::distant, Handle(a));
        fa.for_each([&](std::size_t b) {
            if (b <= a) return;
            (fa & g.row(Relation::distant, Handle(b))).for_each([&](std::size_t c) { total += c > b; });
        });
    }
    return total;
}

/// All unordered mutually distant triples when there are at most `limit`,
/// otherwise `sample` random ones.
inline std::vector<Triple> distant_triples(const GrassmannianIndex& g, std::size_t limit, std::size_t sample,
                                           std::mt19937_64& rng, bool& exhaustive)
{
    std::vector<Triple> out;
    exhaustive = count_distant_triples(g) <= limit;
    if (exhaustive) {
        for (std::size_t a = 0; a < g.size(); ++a) {
            const BitRow& fa = g.row(Relation::distant, Handle(a));
            fa.for_each([&](std::size_t b) {
                if (b <= a) return;
                (fa & g.row(Relation::distant, Handle(b))).for_each([&](std::size_t c) {
                    if (c > b) out.push_back({Handle(a), Handle(b), Handle(c)});
                });
            });
        }
        return out;
    }
    while (out.size() < sample) {
        auto c = random_distant_clique(g, rng, 3);
        if (c.size() == 3) out.push_back({c[0], c[1], c[2]});
    }
    return out;
}

struct Samples {
    std::size_t maps = 100;        ///< group elements for equivariance / automorphism checks
    std::size_t candidates = 1000; ///< random distant cliques for predicate cross-checks
    std::size_t chains = 10000;    ///< group elements for a sampled chain orbit
    std::size_t triples = 10000;   ///< triples when an exhaustive sweep is too large
};

class Runner {
public:
    Runner(const GrassmannianIndex& g, const SuiteConfig& cfg, std::size_t suite_id)
        : g_(g), timings_(cfg.timings)
    {
        std::seed_seq seq{std::uint32_t(cfg.seed), std::uint32_t(cfg.seed >> 32), std::uint32_t(g.p()),
                          std::uint32_t(g.n()), std::uint32_t(suite_id)};
        rng_.seed(seq);
        if (cfg.sample) samples_ = {*cfg.sample, *cfg.sample, *cfg.sample, *cfg.sample};
    }

    std::vector<Check> run(const std::string& suite)
    {
        if (suite == "cliques") cliques();
        else if (suite == "pencils") pencils();
        else if (suite == "distadj") distadj();
        else if (suite == "metrics") metrics();
        else if (suite == "ringline") ringline();
        else if (suite == "reguli") reguli();
        else if (suite == "zreg-equivalence") zreg();
        else if (suite == "lemmas") lemmas();
        else if (suite == "automorph") automorph();
        else fail(ErrorKind::BadConfig, "unknown suite '" + suite + "'");
        return std::move(checks_);
    }

private:
    template <class Fn>
    void check(std::string name, Fn&& fn)
    {
        Check c;
        c.name = std::move(name);
        const auto start = std::chrono::steady_clock::now();
        fn(c);
        if (timings_)
            c.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (!c.passed && c.witness.empty()) c.witness = "(no witness recorded)";
        checks_.push_back(std::move(c));
    }

    static void fail_with(Check& c, const std::string& witness)
    {
        if (c.passed) c.witness = witness;
        c.passed = false;
    }

    void require_sweepable() const
    {
        if (g_.size() > kSweepLimit)
            fail(ErrorKind::ResourceLimit, "suite sweeps all pairs or triples; |G| = " + std::to_string(g_.size()) +
                                               " exceeds " + std::to_string(kSweepLimit));
    }

    std::size_t p() const { return std::size_t(g_.p()); }
    std::size_t n() const { return std::size_t(g_.n()); }

    // --- suites ---------------------------------------------------------------

    void cliques()
    {
        const auto labels = maximal_adjacency_cliques(g_);
        check("maximal-cliques-are-stars-and-tops", [&](Check& c) {
            const auto generic = maximal_cliques(g_.rows(Relation::adjacency));
            std::set<std::vector<Handle>> found(generic.begin(), generic.end()), expected;
            std::size_t stars = 0, tops = 0;
            const auto size = clique_size(g_.p(), g_.n());
            for (const auto& l : labels) {
                expected.insert(l.members);
                (l.kind == CliqueKind::star ? stars : tops) += 1;
                if (l.members.size() != size) fail_with(c, "clique of wrong size: " + describe(g_, l.members));
            }
            std::size_t extras = 0, misses = 0;
            for (const auto& x : found)
                if (!expected.count(x)) {
                    ++extras;
                    fail_with(c, "maximal clique that is neither star nor top: " + describe(g_, x));
                }
            for (const auto& x : expected)
                if (!found.count(x)) {
                    ++misses;
                    fail_with(c, "star or top not found as maximal clique: " + describe(g_, x));
                }
            c.counts = {{"maximal_cliques", generic.size()}, {"stars", stars}, {"tops", tops},
                        {"clique_size", size},         {"extras", extras}, {"misses", misses}};
            c.detail = std::to_string(generic.size()) + " maximal cliques: " + std::to_string(stars) + " stars, " +
                       std::to_string(tops) + " tops, size " + std::to_string(size) + " each";
        });
        check("no-star-is-a-top", [&](Check& c) {
            std::set<std::vector<Handle>> stars;
            for (const auto& l : labels)
                if (l.kind == CliqueKind::star) stars.insert(l.members);
            std::size_t shared = 0;
            for (const auto& l : labels)
                if (l.kind == CliqueKind::top && stars.count(l.members)) {
                    ++shared;
                    fail_with(c, "set is both star and top: " + describe(g_, l.members));
                }
            c.counts = {{"shared", shared}};
            c.detail = "stars and tops are distinct sets";
        });
        check("adjacent-triples-share-a-clique", [&](Check& c) {
            std::vector<BitRow> member_of(g_.size(), BitRow(labels.size()));
            for (std::size_t k = 0; k < labels.size(); ++k)
                for (auto h : labels[k].members) member_of[h].set(k);
            std::size_t triples = 0;
            for (std::size_t a = 0; a < g_.size(); ++a) {
                const BitRow& ra = g_.row(Relation::adjacency, Handle(a));
                ra.for_each([&](std::size_t b) {
                    if (b <= a) return;
                    (ra & g_.row(Relation::adjacency, Handle(b))).for_each([&](std::size_t x) {
                        if (x <= b) return;
                        ++triples;
                        if (!(member_of[a] & member_of[b] & member_of[x]).any()) {
                            const std::vector<Handle> t{Handle(a), Handle(b), Handle(x)};
                            fail_with(c, "mutually adjacent triple in no star or top: " + describe(g_, t));
                        }
                    });
                });
            }
            c.counts = {{"triples", triples}};
            c.detail = std::to_string(triples) + " mutually adjacent triples, each in a star or top";
        });
    }

    void pencils()
    {
        check("pencils-from-cliques-equal-flags", [&](Check& c) {
            const auto generic = maximal_cliques(g_.rows(Relation::adjacency));
            const auto via_cliques = pencils_from_cliques(g_, generic);
            const auto via_flags = pencils_from_flags(g_);
            std::set<std::vector<Handle>> a, b;
            for (const auto& x : via_cliques) a.insert(x.members);
            for (const auto& x : via_flags) b.insert(x.members);
            for (const auto& x : via_flags)
                if (x.members.size() != p() + 1) fail_with(c, "pencil of wrong size: " + describe(g_, x.members));
            for (const auto& x : a)
                if (!b.count(x)) fail_with(c, "clique intersection that is no pencil: " + describe(g_, x));
            for (const auto& x : b)
                if (!a.count(x)) fail_with(c, "pencil that is no clique intersection: " + describe(g_, x));
            c.counts = {{"pencils_from_cliques", a.size()}, {"pencils_from_flags", b.size()}, {"size", p() + 1}};
            c.detail = std::to_string(b.size()) + " pencils of size " + std::to_string(p() + 1);
        });
        check("pencil-is-star-meet-top", [&](Check& c) {
            std::size_t checked = 0;
            for (const auto& pen : pencils_from_flags(g_)) {
                ++checked;
                auto st = star(g_, pen.lower), tp = top(g_, pen.upper);
                std::vector<Handle> common;
                std::set_intersection(st.members.begin(), st.members.end(), tp.members.begin(), tp.members.end(),
                                      std::back_inserter(common));
                if (common != pen.members)
                    fail_with(c, "pencil " + pen.lower.to_string() + " < X < " + pen.upper.to_string() +
                                     " differs from star meet top " + describe(g_, common));
            }
            c.counts = {{"pencils", checked}};
            c.detail = "every pencil is the meet of its star and top";
        });
    }

    void distadj()
    {
        require_sweepable();
        check("adjacent-via-distant", [&](Check& c) {
            std::size_t pairs = 0, adjacent = 0, disagreements = 0;
            for (std::size_t a = 0; a < g_.size(); ++a)
                for (std::size_t b = a + 1; b < g_.size(); ++b) {
                    ++pairs;
                    const bool truth = g_.adjacent(Handle(a), Handle(b));
                    adjacent += truth;
                    auto w = adjacency_witness(g_, Handle(a), Handle(b));
                    if (w.has_value() != truth) {
                        ++disagreements;
                        fail_with(c, describe(g_, Handle(a)) + " and " + describe(g_, Handle(b)) +
                                         (truth ? " adjacent but no witness" : " not adjacent but witness " +
                                                                                    describe(g_, *w)));
                    }
                }
            c.counts = {{"pairs", pairs}, {"adjacent", adjacent}, {"disagreements", disagreements}};
            c.detail = "agrees with adjacency on all " + std::to_string(pairs) + " pairs";
        });
    }

    void metrics()
    {
        const int n_ = g_.n();
        auto graph_check = [&](Relation rel, int want, const std::string& label) {
            check(std::string(to_string(rel)) + "-graph", [&](Check& c) {
                auto m = graph_metrics(g_, rel);
                c.counts = {{"connected", m.connected}, {"diameter", m.diameter}, {"expected_diameter", want}};
                c.detail = label + " diameter " + std::to_string(m.diameter);
                if (!m.connected) {
                    auto d = distances_from(g_, rel, 0);
                    auto far = std::find(d.begin(), d.end(), -1) - d.begin();
                    fail_with(c, "disconnected: no path from " + describe(g_, 0) + " to " +
                                     describe(g_, Handle(far)));
                } else if (m.diameter != want) {
                    for (std::size_t h = 0; h < g_.size(); ++h)
                        if (m.eccentricity[h] == m.diameter) {
                            fail_with(c, "eccentricity " + std::to_string(m.diameter) + " at " +
                                             describe(g_, Handle(h)));
                            break;
                        }
                }
            });
        };
        graph_check(Relation::adjacency, n_, "Grassmann");
        graph_check(Relation::distant, 2, "distant");
        check("distant-iff-distance-n", [&](Check& c) {
            std::size_t pairs = 0;
            for (std::size_t a = 0; a < g_.size(); ++a) {
                auto d = distances_from(g_, Relation::adjacency, Handle(a));
                for (std::size_t b = 0; b < g_.size(); ++b) {
                    ++pairs;
                    if ((d[b] == n_) != g_.distant(Handle(a), Handle(b)))
                        fail_with(c, describe(g_, Handle(a)) + " and " + describe(g_, Handle(b)) + " at distance " +
                                         std::to_string(d[b]));
                }
            }
            c.counts = {{"ordered_pairs", pairs}};
            c.detail = "distant exactly at Grassmann distance " + std::to_string(n_);
        });
    }

    GL2RElement random_psi() { return GL2RElement::random(g_.field(), n(), rng_); }

    Frame random_frame()
    {
        Matrix m = random_invertible(g_.field(), 2 * n(), rng_);
        return {Subspace(m.top_rows(n())), Subspace(m.block(n(), 0, n(), 2 * n())),
                random_invertible(g_.field(), n(), rng_)};
    }

    void ringline()
    {
        const auto pts = enumerate_ring_points(g_.field(), n());
        check("phi-bijective", [&](Check& c) {
            auto r = phi_is_bijective(g_);
            c.passed = r.ok();
            c.witness = r.witness;
            c.counts = {{"ring_points", r.ring_points},
                        {"grassmannian", r.grassmannian},
                        {"injective", r.injective},
                        {"surjective", r.surjective},
                        {"ring_distant_pairs", r.ring_distant_pairs},
                        {"complementary_pairs", r.grassmann_distant_pairs},
                        {"disagreements", r.distant_disagreements}};
            c.detail = std::to_string(r.ring_points) + " ring points onto " + std::to_string(r.grassmannian) +
                       " subspaces; distant iff complementary";
            if (!c.passed && c.witness.empty()) c.witness = "count mismatch";
        });
        check("equivariance", [&](Check& c) {
            std::size_t instances = 0;
            for (std::size_t i = 0; i < samples_.maps; ++i) {
                auto psi = random_psi();
                for (const auto& pt : pts) {
                    ++instances;
                    if (!(phi(act(psi, pt)) == image(phi(pt), hat(psi))))
                        fail_with(c, "psi=" + psi.matrix().to_string() + " point=" + pt.to_string());
                }
            }
            c.counts = {{"group_elements", samples_.maps}, {"instances", instances}};
            c.detail = "phi(x psi) = phi(x) psi-hat for " + std::to_string(samples_.maps) + " random psi";
        });
        check("action-law", [&](Check& c) {
            for (std::size_t i = 0; i < samples_.maps; ++i) {
                auto a = random_psi(), b = random_psi();
                const auto& pt = pts[pick(rng_, pts.size())];
                if (!(act(a * b, pt) == act(b, act(a, pt))))
                    fail_with(c, "a=" + a.matrix().to_string() + " b=" + b.matrix().to_string() +
                                     " point=" + pt.to_string());
                auto frame = random_frame();
                if (!(hat(a * b, frame) == matmul(hat(a, frame), hat(b, frame))))
                    fail_with(c, "hat not multiplicative for a=" + a.matrix().to_string() +
                                     " b=" + b.matrix().to_string());
            }
            c.counts = {{"pairs", samples_.maps}};
            c.detail = "right action law and hat homomorphism on " + std::to_string(samples_.maps) + " pairs";
        });
        const auto chain = standard_z_chain(g_.field(), n());
        check("distant-pairs-have-witness", [&](Check& c) {
            std::size_t pairs = 0;
            for (const auto& a : pts)
                for (const auto& b : pts) {
                    if (!ring_distant(a, b)) continue;
                    ++pairs;
                    auto w = distant_witness(a, b);
                    if (!w || !(act(*w, chain[0]) == a) || !(act(*w, chain[1]) == b))
                        fail_with(c, "no witness for " + a.to_string() + ", " + b.to_string());
                }
            c.counts = {{"ordered_distant_pairs", pairs}};
            c.detail = "every distant pair is an image of (R(I,0), R(0,I))";
        });
        check("triple-transitivity", [&](Check& c) {
            bool exhaustive = false;
            auto triples = distant_triples(g_, 100000, samples_.triples, rng_, exhaustive);
            std::map<Subspace, const RingPoint*> by_image;
            for (const auto& pt : pts) by_image[phi(pt)] = &pt;
            std::size_t checked = 0;
            for (const auto& t : triples) {
                // every ordering of the triple
                std::array<Handle, 3> o = t;
                std::sort(o.begin(), o.end());
                do {
                    ++checked;
                    const RingPoint& a = *by_image.at(g_.element(o[0]));
                    const RingPoint& b = *by_image.at(g_.element(o[1]));
                    const RingPoint& x = *by_image.at(g_.element(o[2]));
                    auto w = triple_witness(a, b, x);
                    if (!(act(w, chain[0]) == a) || !(act(w, chain[1]) == b) || !(act(w, chain[2]) == x))
                        fail_with(c, "witness fails for " + describe(g_, std::span<const Handle>(o)));
                } while (std::next_permutation(o.begin(), o.end()));
            }
            c.counts = {{"ordered_triples", checked}, {"exhaustive", exhaustive}};
            c.detail = "mutually distant triples are images of the standard triple (" +
                       std::string(exhaustive ? "exhaustive" : "sampled") + ")";
        });
        check("frame-independence", [&](Check& c) {
            const std::size_t frames = std::min<std::size_t>(samples_.maps, 20);
            for (std::size_t i = 0; i < frames; ++i) {
                auto a = random_frame(), b = random_frame();
                auto t = frame_transition(a, b);
                for (const auto& pt : pts)
                    if (!(image(phi(pt, a), t) == phi(pt, b))) {
                        fail_with(c, "frames " + a.lambda.to_string() + " / " + b.lambda.to_string() + " at " +
                                         pt.to_string());
                        break;
                    }
            }
            c.counts = {{"frame_pairs", frames}};
            c.detail = "phi maps of different frames differ by a linear map of V";
        });
    }

    static std::vector<Subspace> sorted(std::vector<Subspace> v)
    {
        std::sort(v.begin(), v.end());
        return v;
    }

    // R2 straight from the definition, over every line of V
    bool r2_by_lines(const std::vector<Subspace>& s)
    {
        if (lines_.empty()) lines_ = enumerate_subspaces(g_.field(), 2 * n(), 2);
        for (const auto& line : lines_) {
            std::size_t hits = 0;
            for (const auto& e : s) hits += meets(line, e);
            if (hits >= 3 && hits != s.size()) return false;
        }
        return true;
    }

    void reguli()
    {
        require_sweepable();
        check("regulus-through-triples", [&](Check& c) {
            bool exhaustive = false;
            auto triples = distant_triples(g_, 200000, samples_.triples, rng_, exhaustive);
            const auto point_count = gaussian_binomial(g_.p(), g_.n(), 1);
            std::set<std::vector<Handle>> distinct;
            for (const auto& t : triples) {
                const auto &a = g_.element(t[0]), &b = g_.element(t[1]), &x = g_.element(t[2]);
                auto r = regulus_through(a, b, x);
                auto members = handles_of(g_, r.members);
                const bool holds = std::includes(members.begin(), members.end(), t.begin(), t.end());
                if (!holds || members.size() != p() + 1 || r.directrices.size() != point_count ||
                    !(regulus_through(b, x, a) == r))
                    fail_with(c, "bad regulus through " + describe(g_, std::span<const Handle>(t)) + ": " +
                                     describe(g_, members));
                for (const auto& l : r.directrices)
                    for (const auto& e : r.members)
                        if (intersection_dim(l, e) != 1)
                            fail_with(c, "directrix " + l.to_string() + " misses " + e.to_string());
                distinct.insert(members);
            }
            std::size_t not_regulus = 0;
            for (const auto& r : distinct)
                if (!is_regulus(subspaces_of(g_, r))) {
                    ++not_regulus;
                    fail_with(c, "constructed set fails the regulus predicate: " + describe(g_, r));
                }
            c.counts = {{"triples", triples.size()},
                        {"exhaustive", exhaustive},
                        {"reguli", distinct.size()},
                        {"directrices_each", point_count},
                        {"rejected", not_regulus}};
            c.detail = std::to_string(distinct.size()) + " reguli of " + std::to_string(p() + 1) +
                       " members from " + std::to_string(triples.size()) + " triples";
        });
        check("partial-regulus-matches-line-oracle", [&](Check& c) {
            std::size_t partial = 0, not_partial = 0;
            for (std::size_t i = 0; i < samples_.candidates; ++i) {
                auto h = random_distant_clique(g_, rng_, 3 + i % 3);
                if (h.size() < 3) continue;
                auto s = subspaces_of(g_, h);
                const bool got = is_partial_regulus(s);
                (got ? partial : not_partial) += 1;
                if (got != r2_by_lines(s)) fail_with(c, "partial-regulus verdict wrong for " + describe(g_, h));
            }
            c.counts = {{"partial", partial}, {"not_partial", not_partial}};
            c.detail = std::to_string(partial + not_partial) + " random distant cliques, " +
                       std::to_string(not_partial) + " fail R2";
        });
        check("closure-matches-extension-oracle", [&](Check& c) {
            const std::size_t rounds = std::max<std::size_t>(1, samples_.candidates / 5);
            std::size_t reguli = 0, others = 0;
            auto one = [&](const std::vector<Subspace>& s, const std::string& what) {
                const bool closure = is_regulus(s);
                (closure ? reguli : others) += 1;
                if (closure != is_regulus_by_extension(g_, s))
                    fail_with(c, "maximality verdicts differ for " + what + " " + describe(s));
            };
            for (std::size_t i = 0; i < rounds; ++i) {
                auto h = random_distant_clique(g_, rng_, 3 + i % (p() + 1));
                if (h.size() >= 3) one(subspaces_of(g_, h), "clique");
                auto r = second_kind_family(random_frame()).members;
                one(r, "regulus");
                r.erase(r.begin() + std::ptrdiff_t(pick(rng_, r.size())));
                if (r.size() >= 3) one(r, "regulus minus a member");
            }
            c.counts = {{"reguli", reguli}, {"non_reguli", others}};
            c.detail = "closure test agrees with single-element extension search";
        });
        check("directrices-and-sublines", [&](Check& c) {
            std::size_t reguli = 0;
            for (std::size_t i = 0; i < samples_.maps; ++i) {
                auto frame = i == 0 ? standard_frame(g_.field(), n()) : random_frame();
                auto r = second_kind_family(frame);
                ++reguli;
                if (r.directrices != first_kind_lines(frame))
                    fail_with(c, "directrices differ from first-kind lines for frame lambda " +
                                     frame.lambda.to_string());
                for (const auto& l : r.directrices) {
                    auto cov = subline_coverage(r, l);
                    std::set<Subspace> distinct(cov.begin(), cov.end());
                    auto line_points = points(l);
                    if (distinct != std::set<Subspace>(line_points.begin(), line_points.end()))
                        fail_with(c, "directrix " + l.to_string() + " not covered point for point");
                }
                for (const auto& t : r.members) {
                    std::set<Subspace> hit;
                    for (const auto& l : r.directrices) hit.insert(intersect(l, t));
                    if (hit.size() != points(t).size())
                        fail_with(c, "first-kind lines do not biject onto the points of " + t.to_string());
                }
            }
            c.counts = {{"reguli", reguli}};
            c.detail = "directrices are the first-kind lines and each is a full subline";
        });
        check("segre-families", [&](Check& c) {
            auto frame = standard_frame(g_.field(), n());
            const auto first = first_kind_lines(frame);
            const auto second = second_kind_family(frame).members;
            std::vector<Subspace> transversals;
            for (const auto& t : g_.elements()) {
                std::set<Subspace> hit;
                bool ok = true;
                for (const auto& l : first) {
                    auto m = intersect(l, t);
                    if (m.dim() != 1) ok = false;
                    else hit.insert(m);
                }
                if (ok && hit.size() == points(t).size()) transversals.push_back(t);
            }
            if (sorted(transversals) != second)
                fail_with(c, "transversals " + describe(sorted(transversals)) + " vs second kind " + describe(second));
            std::set<Vector> q;
            for (const auto& l : first) for_each_vector(l, [&](const Vector& v) { q.insert(v); });
            std::size_t inside = 0;
            if (lines_.empty()) lines_ = enumerate_subspaces(g_.field(), 2 * n(), 2);
            for (const auto& line : lines_) {
                bool in_q = true;
                for_each_vector(line, [&](const Vector& v) { in_q = in_q && q.count(v); });
                if (!in_q) continue;
                ++inside;
                const bool first_kind = std::find(first.begin(), first.end(), line) != first.end();
                const bool in_second =
                    std::any_of(second.begin(), second.end(), [&](const Subspace& t) { return contains(t, line); });
                if (!first_kind && !in_second)
                    fail_with(c, "line " + line.to_string() + " in Q is of neither kind");
            }
            c.counts = {{"transversals", transversals.size()}, {"lines_in_q", inside}};
            c.detail = "second-kind members are exactly the transversals; lines in Q classified";
        });
    }

    void zreg()
    {
        require_sweepable();
        bool exhaustive = false;
        std::set<std::vector<Handle>> reguli;
        check("unique-regulus-per-triple", [&](Check& c) {
            auto triples = distant_triples(g_, 200000, samples_.triples, rng_, exhaustive);
            std::map<Triple, std::size_t> hits;
            for (const auto& t : triples)
                reguli.insert(handles_of(
                    g_, regulus_through(g_.element(t[0]), g_.element(t[1]), g_.element(t[2])).members));
            if (exhaustive) {
                // each regulus contributes its 3-subsets; each triple must be hit once
                for (const auto& r : reguli)
                    for (std::size_t a = 0; a < r.size(); ++a)
                        for (std::size_t b = a + 1; b < r.size(); ++b)
                            for (std::size_t x = b + 1; x < r.size(); ++x) ++hits[{r[a], r[b], r[x]}];
                for (const auto& [t, k] : hits)
                    if (k != 1)
                        fail_with(c, "triple on " + std::to_string(k) + " reguli: " +
                                         describe(g_, std::span<const Handle>(t)));
                if (hits.size() != triples.size())
                    fail_with(c, std::to_string(triples.size() - std::min(triples.size(), hits.size())) +
                                     " triples on no regulus");
            } else {
                // brute-force closure is costly; check a bounded prefix of the sample
                const std::size_t limit = std::min<std::size_t>(triples.size(), 200);
                for (std::size_t i = 0; i < limit; ++i) {
                    const auto& t = triples[i];
                    auto r = handles_of(g_, regulus_through(g_.element(t[0]), g_.element(t[1]), g_.element(t[2]))
                                                .members);
                    auto extensions = regulus_extensions(g_, subspaces_of(g_, t));
                    std::vector<Handle> closure(t.begin(), t.end());
                    closure.insert(closure.end(), extensions.begin(), extensions.end());
                    std::sort(closure.begin(), closure.end());
                    if (closure != r) fail_with(c, "extensions of triple differ from its regulus: " +
                                                       describe(g_, closure));
                }
            }
            c.counts = {{"triples", triples.size()}, {"exhaustive", exhaustive}, {"reguli", reguli.size()}};
            c.detail = std::to_string(reguli.size()) + " reguli; every mutually distant triple on exactly one";
        });
        check("chains-are-reguli", [&](Check& c) {
            bool full = true;
            {
                unsigned long long order = 1;
                for (std::size_t i = 0; i < 4 * n() * n() && full; ++i)
                    if ((order *= p()) > (1ull << 20)) full = false;
            }
            std::set<std::vector<Handle>> chains;
            if (full) {
                chains = z_chain_orbit(g_);
            } else {
                std::vector<GL2RElement> psis;
                psis.reserve(samples_.chains);
                for (std::size_t i = 0; i < samples_.chains; ++i) psis.push_back(random_psi());
                chains = z_chain_images(g_, psis);
            }
            for (const auto& x : chains)
                if (!reguli.count(x) && exhaustive) fail_with(c, "chain image that is no regulus: " + describe(g_, x));
            if (full && exhaustive)
                for (const auto& x : reguli)
                    if (!chains.count(x)) fail_with(c, "regulus that is no chain image: " + describe(g_, x));
            for (const auto& x : chains)
                if (!is_regulus(subspaces_of(g_, x))) fail_with(c, "chain image fails R1-R3: " + describe(g_, x));
            c.counts = {{"chains", chains.size()},
                        {"orbit", full ? "full" : "sampled"},
                        {"group_elements", full ? 0 : samples_.chains},
                        {"reguli", reguli.size()}};
            c.detail = std::to_string(chains.size()) + " chain images" +
                       (full ? " = all reguli" : " (sampled orbit), each a regulus");
        });
        check("distant-characterization", [&](Check& c) {
            DistantCharacterization dc(g_);
            std::size_t candidates = 0, passers = 0;
            std::set<std::vector<Handle>> passing;
            auto one = [&](const std::vector<Handle>& h) {
                ++candidates;
                const bool via_distant = dc.satisfies(h);
                const bool regulus = is_regulus(subspaces_of(g_, h));
                passers += via_distant;
                if (via_distant) passing.insert(h);
                if (via_distant != regulus)
                    fail_with(c, std::string(regulus ? "regulus rejected: " : "non-regulus accepted: ") +
                                     describe(g_, h));
            };
            const bool all_cliques = g_.size() <= 40;
            if (all_cliques) {
                for_each_clique(g_.rows(Relation::distant), 3, [&](const std::vector<Handle>& h) { one(h); });
                if (exhaustive && passing != reguli)
                    fail_with(c, "passing sets differ from reguli (" + std::to_string(passing.size()) + " vs " +
                                     std::to_string(reguli.size()) + ")");
            } else {
                for (const auto& r : reguli) one(r);
                for (std::size_t i = 0; i < samples_.candidates; ++i) {
                    auto h = random_distant_clique(g_, rng_, 3 + i % (p() + 2));
                    if (h.size() >= 3) one(h);
                }
            }
            c.counts = {{"candidates", candidates},
                        {"passers", passers},
                        {"all_distant_cliques", all_cliques}};
            c.detail = std::to_string(passers) + " of " + std::to_string(candidates) +
                       " candidates pass; distant characterization agrees on all candidates";
        });
    }

    void lemmas()
    {
        require_sweepable();
        auto sweep = [&](const std::string& name, SweepReport (*fn)(const GrassmannianIndex&), const char* what) {
            check(name, [&](Check& c) {
                auto r = fn(g_);
                c.passed = r.violations == 0;
                c.witness = r.witness;
                c.counts = {{"instances", r.instances}, {"violations", r.violations}};
                c.detail = std::to_string(r.instances) + " instances: " + what;
            });
        };
        sweep("lemma-z1", &check_lemma_z1, "W meets E in a point");
        sweep("lemma-z2", &check_lemma_z2, "joining line meets E0");
    }

    void automorph()
    {
        const auto labels = maximal_adjacency_cliques(g_);
        std::set<std::vector<Handle>> stars, tops;
        for (const auto& l : labels) (l.kind == CliqueKind::star ? stars : tops).insert(l.members);
        check("linear-maps", [&](Check& c) {
            for (std::size_t i = 0; i < samples_.maps; ++i) {
                Matrix m = random_invertible(g_.field(), g_.ambient(), rng_);
                auto perm = induced_permutation(g_, m);
                std::string where = "g=" + m.to_string();
                if (!is_permutation(perm)) fail_with(c, where + " does not permute G");
                for (Relation rel : {Relation::adjacency, Relation::distant})
                    if (auto v = relation_violation(g_, perm, rel))
                        fail_with(c, where + " breaks " + std::string(to_string(rel)) + " at " +
                                         describe(g_, v->first) + ", " + describe(g_, v->second));
                for (const auto& s : stars)
                    if (!stars.count(grasslab::apply(perm, s))) fail_with(c, where + " moves star " + describe(g_, s));
                for (const auto& s : tops)
                    if (!tops.count(grasslab::apply(perm, s))) fail_with(c, where + " moves top " + describe(g_, s));
            }
            c.counts = {{"maps", samples_.maps}, {"field_automorphisms", 1}};
            c.detail = std::to_string(samples_.maps) + " random linear maps preserve both relations, stars, tops";
        });
        check("duality", [&](Check& c) {
            auto perm = duality_permutation(g_);
            if (!is_permutation(perm)) fail_with(c, "duality does not permute G");
            for (Relation rel : {Relation::adjacency, Relation::distant})
                if (auto v = relation_violation(g_, perm, rel))
                    fail_with(c, "duality breaks " + std::string(to_string(rel)) + " at " + describe(g_, v->first) +
                                     ", " + describe(g_, v->second));
            std::size_t swapped = 0;
            for (const auto& l : labels) {
                auto img = grasslab::apply(perm, l.members);
                const auto& other = l.kind == CliqueKind::star ? tops : stars;
                if (other.count(img)) ++swapped;
                else fail_with(c, "duality image of " + describe(g_, l.members) + " is not of the other kind");
            }
            c.counts = {{"stars", stars.size()}, {"tops", tops.size()}, {"swapped", swapped}};
            c.detail = "annihilator swaps the " + std::to_string(stars.size()) + " stars with the " +
                       std::to_string(tops.size()) + " tops";
        });
    }

    const GrassmannianIndex& g_;
    bool timings_;
    std::mt19937_64 rng_;
    Samples samples_;
    std::vector<Check> checks_;
    std::vector<Subspace> lines_;
};

} // namespace detail

struct PlannedRun {
    std::string suite;
    int p;
    int n;
};

/// The runs a configuration asks for. Without (p, n) the "all" suite covers
/// (2,2) and (3,2) with every suite and (2,3) with metrics only.
inline std::vector<PlannedRun> plan(const SuiteConfig& cfg)
{
    const auto& names = suite_names();
    if (cfg.suite != "all" && std::find(names.begin(), names.end(), cfg.suite) == names.end())
        fail(ErrorKind::BadConfig, "unknown suite '" + cfg.suite + "'");
    if (cfg.p.has_value() != cfg.n.has_value()) fail(ErrorKind::BadConfig, "give both --p and --n or neither");
    if (cfg.sample && *cfg.sample == 0) fail(ErrorKind::BadConfig, "sample size must be positive");
    std::vector<PlannedRun> out;
    if (cfg.suite != "all") {
        if (!cfg.p) fail(ErrorKind::BadConfig, "suite '" + cfg.suite + "' needs --p and --n");
        out.push_back({cfg.suite, *cfg.p, *cfg.n});
    } else if (cfg.p) {
        for (const auto& s : names) out.push_back({s, *cfg.p, *cfg.n});
    } else {
        for (auto [p, n] : {std::pair{2, 2}, std::pair{3, 2}})
            for (const auto& s : names) out.push_back({s, p, n});
        out.push_back({"metrics", 2, 3});
    }
    for (const auto& r : out)
        if (r.n < 2) fail(ErrorKind::BadConfig, "verification needs n >= 2");
    return out;
}

inline Report run_suite(const SuiteConfig& cfg)
{
    const auto runs = plan(cfg);
    Report report{cfg.suite, cfg.seed, cfg.timings, {}};
    std::map<std::pair<int, int>, GrassmannianIndex> indices;
    for (const auto& r : runs) {
        auto key = std::pair{r.p, r.n};
        auto it = indices.find(key);
        if (it == indices.end())
            it = indices
                     .emplace(key, cfg.cache_dir ? cached_index(*cfg.cache_dir, r.p, r.n) : build_index(r.p, r.n))
                     .first;
        const auto& names = suite_names();
        const auto id = std::size_t(std::find(names.begin(), names.end(), r.suite) - names.begin());
        detail::Runner runner(it->second, cfg, id);
        report.runs.push_back({r.suite, r.p, r.n, runner.run(r.suite)});
    }
    return report;
}

inline nlohmann::ordered_json to_json(const Report& report)
{
    using nlohmann::ordered_json;
    ordered_json runs = ordered_json::array();
    for (const auto& r : report.runs) {
        ordered_json checks = ordered_json::array();
        for (const auto& c : r.checks) {
            ordered_json j = {{"name", c.name}, {"status", c.passed ? "pass" : "fail"}, {"detail", c.detail},
                              {"counts", c.counts}};
            if (!c.passed) j["witness"] = c.witness;
            if (report.timings) j["elapsed_ms"] = c.elapsed_ms;
            checks.push_back(std::move(j));
        }
        runs.push_back({{"suite", r.suite},
                        {"p", r.p},
                        {"n", r.n},
                        {"status", r.passed() ? "pass" : "fail"},
                        {"checks", std::move(checks)}});
    }
    return {{"artifact", "grasslab"},
            {"version", std::string(kVersion)},
            {"suite", report.suite},
            {"seed", report.seed},
            {"status", report.passed() ? "pass" : "fail"},
            {"runs", std::move(runs)},
            {"summary",
             {{"runs", report.runs.size()},
              {"checks", report.check_count()},
              {"passed", report.check_count() - report.failed_count()},
              {"failed", report.failed_count()}}}};
}

inline std::string to_text(const Report& report)
{
    std::size_t width = 0;
    for (const auto& r : report.runs)
        for (const auto& c : r.checks) width = std::max(width, c.name.size());
    std::ostringstream os;
    os << "grasslab " << kVersion << "  suite " << report.suite << "  seed " << report.seed << '\n';
    for (const auto& r : report.runs) {
        os << '\n' << r.suite << " (p=" << r.p << ", n=" << r.n << ")\n";
        for (const auto& c : r.checks) {
            os << "  " << (c.passed ? "PASS" : "FAIL") << "  " << c.name << std::string(width - c.name.size(), ' ')
               << "  " << c.detail;
            if (report.timings) os << "  [" << std::fixed << std::setprecision(1) << c.elapsed_ms << " ms]";
            os << '\n';
            if (!c.passed) os << "        witness: " << c.witness << '\n';
        }
    }
    os << "\nsummary: " << report.check_count() << " checks, " << report.check_count() - report.failed_count()
       << " passed, " << report.failed_count() << " failed\n";
    return os.str();
}

} // namespace grasslab
