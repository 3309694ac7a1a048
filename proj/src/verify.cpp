#include "geninv/verify.hpp"

#include <random>
#include <sstream>
#include <unordered_map>

namespace geninv {

namespace {

using Clock = std::chrono::steady_clock;

std::string bool_str(bool b) { return b ? "true" : "false"; }

Transcript make_transcript(std::vector<std::pair<std::string, std::string>> inputs,
                           std::string equation, std::string lhs, std::string rhs) {
    return Transcript{std::move(inputs), std::move(equation), std::move(lhs), std::move(rhs)};
}

std::vector<std::pair<std::string, std::string>> name_tuple(
    const std::vector<std::string>& names, const std::vector<Element>& tuple) {
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(names.size());
    for (std::size_t i = 0; i < names.size(); ++i)
        out.emplace_back(names[i], format_element(tuple[i]));
    return out;
}

// Drives a check over index tuples: exhaustively (tuple space gated by the
// ring's enumeration bound) or by seeded rejection sampling until `count`
// tuples passed the hypotheses. fn returns false when hypotheses fail.
template <typename Fn>
void drive(VerificationReport& rep, const RingPtr& ring, int arity,
           const std::optional<SampledMode>& mode, Fn&& fn) {
    const std::uint64_t card = require_enumerable(*ring);
    if (!mode) {
        std::uint64_t space = 1;
        bool too_big = false;
        for (int i = 0; i < arity && !too_big; ++i) {
            if (space > ring->enumeration_bound() / card) too_big = true;
            else space *= card;
        }
        if (too_big)
            throw capability_error(
                "exhaustive " + rep.check + " over " + ring->spec() + ": tuple space " +
                std::to_string(card) + "^" + std::to_string(arity) +
                " is above the enumeration bound " + std::to_string(ring->enumeration_bound()));
        std::vector<std::uint64_t> idx(arity, 0);
        for (;;) {
            std::vector<Element> tuple;
            tuple.reserve(arity);
            for (int i = 0; i < arity; ++i) tuple.push_back(element_at(ring, idx[i]));
            ++rep.cases_total;
            if (fn(tuple)) ++rep.cases_checked;
            else ++rep.cases_hypothesis_failed;
            int pos = arity - 1;
            while (pos >= 0 && ++idx[pos] == card) {
                idx[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    } else {
        std::mt19937_64 rng(mode->seed);
        const std::uint64_t limit = mode->count * 1000 + 1000;
        std::uint64_t draws = 0;
        while (rep.cases_checked < mode->count) {
            if (++draws > limit)
                throw capability_error("sampled " + rep.check + " over " + ring->spec() +
                                       ": hypotheses too sparse, gave up after " +
                                       std::to_string(limit) + " draws");
            std::vector<Element> tuple;
            tuple.reserve(arity);
            for (int i = 0; i < arity; ++i)
                tuple.push_back(element_at(ring, rng() % card));
            ++rep.cases_total;
            if (fn(tuple)) ++rep.cases_checked;
            else ++rep.cases_hypothesis_failed;
        }
    }
}

// Definitional Green tables for small rings: l[x*card+y] = (x <=_L y),
// decided by scan. Built once per check to keep the definitional scans from
// re-deriving the same facts per tuple.
struct LeqTables {
    std::uint64_t card = 0;
    std::vector<char> l, r;

    static LeqTables build(const RingPtr& ring) {
        LeqTables t;
        t.card = require_enumerable(*ring);
        std::vector<Element> elems = all_elements(ring);
        t.l.assign(t.card * t.card, 0);
        t.r.assign(t.card * t.card, 0);
        for (std::uint64_t x = 0; x < t.card; ++x) {
            for (std::uint64_t y = 0; y < t.card; ++y) {
                for (std::uint64_t w = 0; w < t.card; ++w) {
                    if (elems[w] * elems[y] == elems[x]) {
                        t.l[x * t.card + y] = 1;
                        break;
                    }
                }
                for (std::uint64_t w = 0; w < t.card; ++w) {
                    if (elems[y] * elems[w] == elems[x]) {
                        t.r[x * t.card + y] = 1;
                        break;
                    }
                }
            }
        }
        return t;
    }

    bool leq_h(std::uint64_t x, std::uint64_t y) const {
        return l[x * card + y] != 0 && r[x * card + y] != 0;
    }
};

// Definitional candidates of the inverse along d, using tables when present.
struct DefinitionalScan {
    RingPtr ring;
    std::vector<Element> elems;
    std::optional<LeqTables> tables;

    explicit DefinitionalScan(const RingPtr& r) : ring(r) {
        const std::uint64_t card = require_enumerable(*ring);
        elems = all_elements(ring);
        if (card <= 1024) tables = LeqTables::build(ring);
    }

    std::vector<Element> candidates(const Element& a, const Element& d) const {
        if (!tables) return along_candidates_by_definition(a, d);
        std::vector<Element> out;
        const Element da = d * a;
        const Element ad = a * d;
        const std::uint64_t di = index_of(d);
        for (std::uint64_t bi = 0; bi < tables->card; ++bi) {
            const Element& b = elems[bi];
            if (da * b == d && b * ad == d && tables->leq_h(bi, di)) out.push_back(b);
        }
        return out;
    }
};

void check_jacobson(VerificationReport& rep, const RingPtr& ring,
                    const std::optional<SampledMode>& mode) {
    const Element id = one(ring);
    drive(rep, ring, 2, mode, [&](const std::vector<Element>& t) {
        const Element& a = t[0];
        const Element& b = t[1];
        Element one_ab = id + a * b;
        Element one_ba = id + b * a;
        auto ia = try_invert(one_ab);
        auto ib = try_invert(one_ba);
        if (ia.has_value() != ib.has_value()) {
            rep.failures.push_back(make_transcript(name_tuple({"a", "b"}, t),
                                                   "1+ab unit iff 1+ba unit",
                                                   bool_str(ia.has_value()),
                                                   bool_str(ib.has_value())));
        } else if (ia) {
            Element formula = id - b * *ia * a;
            if (formula != *ib)
                rep.failures.push_back(make_transcript(name_tuple({"a", "b"}, t),
                                                       "(1+ba)^-1 = 1 - b(1+ab)^-1 a",
                                                       format_element(formula),
                                                       format_element(*ib)));
        }
        return true;
    });
}

void check_corner(VerificationReport& rep, const RingPtr& ring,
                  const std::optional<SampledMode>& mode) {
    const Element id = one(ring);
    const Element zr = zero(ring);
    const std::vector<Element> elems = all_elements(ring);
    drive(rep, ring, 2, mode, [&](const std::vector<Element>& t) {
        const Element& e = t[0];
        const Element& x = t[1];
        if (!is_idempotent(e)) return false;
        Element exe = e * x * e;
        bool global_unit = try_invert(exe + id - e).has_value();
        bool corner_unit = false;
        if (e == zr) {
            corner_unit = true;  // trivial corner ring {0}
        } else {
            for (const Element& y : elems) {
                if (e * y * e == y && exe * y == e && y * exe == e) {
                    corner_unit = true;
                    break;
                }
            }
        }
        if (global_unit != corner_unit)
            rep.failures.push_back(make_transcript(name_tuple({"e", "x"}, t),
                                                   "exe+1-e unit in R iff exe unit in eRe",
                                                   bool_str(global_unit), bool_str(corner_unit)));
        return true;
    });
}

void check_along_equivalence(VerificationReport& rep, const RingPtr& ring,
                             const std::optional<SampledMode>& mode) {
    DefinitionalScan scan(ring);
    drive(rep, ring, 2, mode, [&](const std::vector<Element>& t) {
        const Element& a = t[0];
        const Element& d = t[1];
        auto inputs = name_tuple({"a", "d"}, t);
        std::vector<Element> cands = scan.candidates(a, d);
        if (cands.size() > 1) {
            rep.failures.push_back(make_transcript(inputs, "uniqueness of the inverse along d",
                                                   std::to_string(cands.size()) + " candidates",
                                                   "at most 1"));
            return true;
        }
        try {
            AlongOutcome unit_route = inverse_along(a, d);
            bool via_unit = unit_route.exists();
            bool via_h = exists_via_h(a, d);
            bool via_def = cands.size() == 1;
            if (via_unit != via_def || via_h != via_def) {
                rep.failures.push_back(make_transcript(
                    inputs, "unit criterion = H criterion = definitional scan",
                    "unit:" + bool_str(via_unit) + " H:" + bool_str(via_h),
                    "definitional:" + bool_str(via_def)));
            } else if (via_def && unit_route.result->b != cands[0]) {
                rep.failures.push_back(make_transcript(inputs, "u^-1 m equals the definitional inverse",
                                                       format_element(unit_route.result->b),
                                                       format_element(cands[0])));
            }
        } catch (const invariant_violation& ex) {
            rep.failures.push_back(make_transcript(inputs, ex.what(), "", ""));
        }
        return true;
    });
}

void check_product_criterion(VerificationReport& rep, const RingPtr& ring,
                             const std::optional<SampledMode>& mode) {
    DefinitionalScan scan(ring);
    const Element id = one(ring);
    std::unordered_map<std::uint64_t, std::optional<Element>> inner_cache;
    auto inner_of = [&](const Element& m) -> const std::optional<Element>& {
        auto [it, fresh] = inner_cache.try_emplace(index_of(m));
        if (fresh) {
            auto cert = inner_inverse(m);
            if (cert) it->second = cert->inner;
        }
        return it->second;
    };
    drive(rep, ring, 4, mode, [&](const std::vector<Element>& t) {
        const Element& p = t[0];
        const Element& m = t[1];
        const Element& q = t[2];
        const Element& a = t[3];
        const auto& mi = inner_of(m);
        if (!mi) return false;
        const std::uint64_t midx = index_of(m);
        if (scan.tables) {
            if (!scan.tables->l[midx * scan.tables->card + index_of(p * m)]) return false;
            if (!scan.tables->r[midx * scan.tables->card + index_of(m * q)]) return false;
        } else {
            if (!leq_l(m, p * m) || !leq_r(m, m * q)) return false;
        }

        auto inputs = name_tuple({"p", "m", "q", "a"}, t);
        Element u = m * q * a * p + id - m * *mi;
        Element v = q * a * p * m + id - *mi * m;
        auto ui = try_invert(u);
        auto vi = try_invert(v);
        if (ui.has_value() != vi.has_value()) {
            rep.failures.push_back(make_transcript(inputs, "u unit iff v unit",
                                                   bool_str(ui.has_value()),
                                                   bool_str(vi.has_value())));
            return true;
        }
        Element d = p * m * q;
        std::vector<Element> cands = scan.candidates(a, d);
        if (cands.size() > 1) {
            rep.failures.push_back(make_transcript(inputs, "uniqueness of the inverse along pmq",
                                                   std::to_string(cands.size()) + " candidates",
                                                   "at most 1"));
            return true;
        }
        if (ui.has_value() != (cands.size() == 1)) {
            rep.failures.push_back(make_transcript(
                inputs, "u unit iff the inverse along pmq exists", bool_str(ui.has_value()),
                bool_str(cands.size() == 1)));
            return true;
        }
        if (ui) {
            Element b1 = p * *ui * m * q;
            Element b2 = p * m * *vi * q;
            if (b1 != b2)
                rep.failures.push_back(make_transcript(inputs, "p u^-1 m q = p m v^-1 q",
                                                       format_element(b1), format_element(b2)));
            else if (b1 != cands[0])
                rep.failures.push_back(
                    make_transcript(inputs, "p u^-1 m q equals the definitional inverse",
                                    format_element(b1), format_element(cands[0])));
        }
        return true;
    });
}

void check_lt_regularity(VerificationReport& rep, const RingPtr& ring,
                         const std::optional<SampledMode>& mode) {
    RingPtr ring2 = Ring::matrix_ring(ring, 2, ring->enumeration_bound());
    const Element zr = zero(ring);
    std::unordered_map<std::uint64_t, bool> regular_cache;
    auto regular = [&](const Element& x) {
        auto [it, fresh] = regular_cache.try_emplace(index_of(x));
        if (fresh) it->second = is_regular(x);
        return it->second;
    };
    drive(rep, ring, 3, mode, [&](const std::vector<Element>& t) {
        const Element& d1 = t[0];
        const Element& d2 = t[1];
        const Element& d3 = t[2];
        if (!regular(d2) || !regular(d3)) return false;
        auto inputs = name_tuple({"d1", "d2", "d3"}, t);
        try {
            LtRegularity lt = lt_regular_inner(d2, d1, d3);
            Element m = Element::matrix(ring2, {d2, zr, d1, d3});
            bool flat_regular = is_regular(m);
            if (lt.regular != flat_regular)
                rep.failures.push_back(make_transcript(inputs, "w regular iff M regular",
                                                       bool_str(lt.regular),
                                                       bool_str(flat_regular)));
        } catch (const invariant_violation& ex) {
            rep.failures.push_back(make_transcript(inputs, ex.what(), "", ""));
        }
        return true;
    });
}

void check_block(VerificationReport& rep, const RingPtr& ring,
                 const std::optional<SampledMode>& mode, bool general) {
    const Element zr = zero(ring);
    const Element id = one(ring);
    std::unordered_map<std::uint64_t, std::optional<RegularityCertificate>> cert_cache;
    auto cert_of = [&](const Element& x) -> const std::optional<RegularityCertificate>& {
        auto [it, fresh] = cert_cache.try_emplace(index_of(x));
        if (fresh) it->second = inner_inverse(x);
        return it->second;
    };
    std::unordered_map<std::uint64_t, bool> along_cache;
    const std::uint64_t card = require_enumerable(*ring);
    auto along_exists = [&](const Element& x, const Element& m) {
        auto [it, fresh] = along_cache.try_emplace(index_of(x) * card + index_of(m));
        if (fresh) it->second = inverse_along(x, m).exists();
        return it->second;
    };

    const int arity = general ? 8 : 7;
    const std::vector<std::string> names =
        general ? std::vector<std::string>{"a", "c", "b", "d", "d1", "d3", "d2", "d4"}
                : std::vector<std::string>{"a", "c", "b", "d", "d1", "d3", "d2"};
    drive(rep, ring, arity, mode, [&](const std::vector<Element>& t) {
        const Element& a = t[0];
        const Element& c = t[1];
        const Element& b = t[2];
        const Element& d = t[3];
        const Element& d1 = t[4];
        const Element& d3 = t[5];
        const Element& d2 = t[6];
        const Element d4 = general ? t[7] : zr;

        // hypotheses
        if (general) {
            const auto& c4 = cert_of(d4);
            if (!c4) return false;
            const Element& d4p = c4->reflexive;
            Element f = id - d4p * d4;
            if (d3 * f != zr) return false;
            Element s = d1 - d3 * d4p * d2;
            if (!cert_of(s)) return false;
            if (!along_exists(a, s)) return false;
        } else {
            if (!cert_of(d2) || !cert_of(d3)) return false;
            if (!along_exists(c, d2)) return false;
        }

        auto inputs = name_tuple(names, t);
        Block2x2 A{a, c, b, d};
        Block2x2 D{d1, d3, d2, d4};
        try {
            BlockOutcome out = general ? inverse_along_general(A, D) : inverse_along_220(A, D);
            AlongOutcome direct = inverse_along(A.to_element(), D.to_element());
            if (out.exists() != direct.exists()) {
                rep.failures.push_back(make_transcript(
                    inputs, "closed-form existence iff flattened-ring existence",
                    bool_str(out.exists()), bool_str(direct.exists())));
            } else if (out.exists() && out.result->to_element() != direct.result->b) {
                rep.failures.push_back(make_transcript(
                    inputs, "closed form equals the flattened-ring inverse",
                    format_element(out.result->to_element()), format_element(direct.result->b)));
            }
        } catch (const invariant_violation& ex) {
            rep.failures.push_back(make_transcript(inputs, ex.what(), "", ""));
        }
        return true;
    });
}

void check_green_agreement(VerificationReport& rep, const RingPtr& ring,
                           const std::optional<SampledMode>& mode) {
    if (ring->kind() != Ring::Kind::matrix ||
        ring->scalar_base().kind() != Ring::Kind::prime_field)
        throw capability_error("green-agreement requires a matrix ring over a prime field, got " +
                               ring->spec());
    struct Rel {
        const char* name;
        std::optional<GreenWitness> (*fn)(const Element&, const Element&, GreenPath);
    };
    const Rel rels[] = {{"leq_L", leq_l}, {"leq_R", leq_r}, {"H", green_h}};
    drive(rep, ring, 2, mode, [&](const std::vector<Element>& t) {
        const Element& a = t[0];
        const Element& b = t[1];
        for (const Rel& rel : rels) {
            auto s = rel.fn(a, b, GreenPath::scan);
            auto l = rel.fn(a, b, GreenPath::linear);
            if (s.has_value() != l.has_value()) {
                rep.failures.push_back(make_transcript(
                    name_tuple({"a", "b"}, t),
                    std::string("scan and linear deciders agree on ") + rel.name,
                    bool_str(s.has_value()), bool_str(l.has_value())));
                continue;
            }
            if (s && !s->verify(a, b))
                rep.failures.push_back(make_transcript(name_tuple({"a", "b"}, t),
                                                       std::string("scan witness for ") + rel.name +
                                                           " re-evaluates",
                                                       "witness", "violated"));
            if (l && !l->verify(a, b))
                rep.failures.push_back(make_transcript(name_tuple({"a", "b"}, t),
                                                       std::string("linear witness for ") +
                                                           rel.name + " re-evaluates",
                                                       "witness", "violated"));
        }
        return true;
    });
}

void check_uniqueness(VerificationReport& rep, const RingPtr& ring,
                      const std::optional<SampledMode>& mode) {
    DefinitionalScan scan(ring);
    drive(rep, ring, 2, mode, [&](const std::vector<Element>& t) {
        std::vector<Element> cands = scan.candidates(t[0], t[1]);
        if (cands.size() > 1)
            rep.failures.push_back(make_transcript(name_tuple({"a", "d"}, t),
                                                   "uniqueness of the inverse along d",
                                                   std::to_string(cands.size()) + " candidates",
                                                   "at most 1"));
        return true;
    });
}

}  // namespace

std::string_view theorem_name(TheoremId id) {
    switch (id) {
        case TheoremId::jacobson: return "jacobson";
        case TheoremId::corner: return "corner";
        case TheoremId::along_equivalence: return "mary-equivalence";
        case TheoremId::product_criterion: return "pmq-theorem";
        case TheoremId::lt_regularity: return "lt-regularity";
        case TheoremId::block_220: return "block-220";
        case TheoremId::block_general: return "block-general";
        case TheoremId::green_agreement: return "green-agreement";
        case TheoremId::uniqueness: return "uniqueness";
    }
    return "";
}

std::optional<TheoremId> theorem_from_name(std::string_view name) {
    for (TheoremId id : all_theorems())
        if (theorem_name(id) == name) return id;
    return std::nullopt;
}

const std::vector<TheoremId>& all_theorems() {
    static const std::vector<TheoremId> ids = {
        TheoremId::jacobson,      TheoremId::corner,          TheoremId::along_equivalence,
        TheoremId::product_criterion, TheoremId::lt_regularity, TheoremId::block_220,
        TheoremId::block_general, TheoremId::green_agreement, TheoremId::uniqueness};
    return ids;
}

VerificationReport run_check(TheoremId id, const RingPtr& ring, std::optional<SampledMode> mode) {
    VerificationReport rep;
    rep.check = theorem_name(id);
    rep.ring_spec = ring->spec();
    rep.sampled = mode;
    const auto start = Clock::now();
    switch (id) {
        case TheoremId::jacobson: check_jacobson(rep, ring, mode); break;
        case TheoremId::corner: check_corner(rep, ring, mode); break;
        case TheoremId::along_equivalence: check_along_equivalence(rep, ring, mode); break;
        case TheoremId::product_criterion: check_product_criterion(rep, ring, mode); break;
        case TheoremId::lt_regularity: check_lt_regularity(rep, ring, mode); break;
        case TheoremId::block_220: check_block(rep, ring, mode, false); break;
        case TheoremId::block_general: check_block(rep, ring, mode, true); break;
        case TheoremId::green_agreement: check_green_agreement(rep, ring, mode); break;
        case TheoremId::uniqueness: check_uniqueness(rep, ring, mode); break;
    }
    rep.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
    return rep;
}

VerificationReport search_question(const RingPtr& base, std::optional<SampledMode> mode) {
    VerificationReport rep;
    rep.check = "search-question";
    rep.ring_spec = base->spec();
    rep.sampled = mode;
    rep.is_search = true;
    const auto start = Clock::now();

    RingPtr ring2 = Ring::matrix_ring(base, 2, base->enumeration_bound());
    DefinitionalScan scan(ring2);
    const Element zr = zero(base);
    const Element id = one(base);
    std::unordered_map<std::uint64_t, std::optional<RegularityCertificate>> cert_cache;
    auto cert_of = [&](const Element& x) -> const std::optional<RegularityCertificate>& {
        auto [it, fresh] = cert_cache.try_emplace(index_of(x));
        if (fresh) it->second = inner_inverse(x);
        return it->second;
    };
    std::unordered_map<std::uint64_t, bool> d_regular_cache;
    auto d_regular = [&](const Element& dd) {
        auto [it, fresh] = d_regular_cache.try_emplace(index_of(dd));
        if (fresh) it->second = is_regular(dd);
        return it->second;
    };

    drive(rep, ring2, 2, mode, [&](const std::vector<Element>& t) {
        const Element& A = t[0];
        const Element& D = t[1];
        if (!d_regular(D)) return false;

        std::vector<Element> cands = scan.candidates(A, D);
        if (cands.size() > 1) {
            rep.failures.push_back(
                make_transcript({{"A", format_element(A)}, {"D", format_element(D)}},
                                "uniqueness of the inverse along D",
                                std::to_string(cands.size()) + " candidates", "at most 1"));
            return true;
        }
        if (cands.empty()) return true;

        const Element& a = A.entry(0, 0);
        const Element& c = A.entry(0, 1);
        const Element& d1 = D.entry(0, 0);
        const Element& d3 = D.entry(0, 1);
        const Element& d2 = D.entry(1, 0);
        const Element& d4 = D.entry(1, 1);

        bool covered_220 = false;
        if (d4 == zr && cert_of(d2) && cert_of(d3))
            covered_220 = inverse_along(c, d2).exists();

        bool covered_general = false;
        if (const auto& c4 = cert_of(d4)) {
            const Element& d4p = c4->reflexive;
            Element f = id - d4p * d4;
            if (d3 * f == zr) {
                Element s = d1 - d3 * d4p * d2;
                if (cert_of(s)) covered_general = inverse_along(a, s).exists();
            }
        }

        if (!covered_220 && !covered_general)
            rep.findings.push_back(make_transcript(
                {{"A", format_element(A)},
                 {"D", format_element(D)},
                 {"inverse", format_element(cands[0])}},
                "inverse exists but neither closed-form route applies", "exists", "uncovered"));
        return true;
    });

    rep.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
    return rep;
}

std::string serialize_report(const VerificationReport& rep) {
    std::ostringstream out;
    out << "check=" << rep.check << "\n";
    out << "ring=" << rep.ring_spec << "\n";
    if (rep.sampled) {
        out << "mode=sampled\n";
        out << "seed=" << rep.sampled->seed << "\n";
        out << "count=" << rep.sampled->count << "\n";
    } else {
        out << "mode=exhaustive\n";
    }
    out << "cases_total=" << rep.cases_total << "\n";
    out << "cases_checked=" << rep.cases_checked << "\n";
    out << "cases_hypothesis_failed=" << rep.cases_hypothesis_failed << "\n";
    out << "failures=" << rep.failures.size() << "\n";
    for (std::size_t i = 0; i < rep.failures.size(); ++i) {
        const Transcript& tr = rep.failures[i];
        for (const auto& [name, literal] : tr.inputs)
            out << "failure." << i << ".input." << name << "=" << literal << "\n";
        out << "failure." << i << ".equation=" << tr.equation << "\n";
        out << "failure." << i << ".lhs=" << tr.lhs << "\n";
        out << "failure." << i << ".rhs=" << tr.rhs << "\n";
    }
    if (rep.is_search) {
        out << "findings=" << rep.findings.size() << "\n";
        for (std::size_t i = 0; i < rep.findings.size(); ++i) {
            const Transcript& tr = rep.findings[i];
            for (const auto& [name, literal] : tr.inputs)
                out << "finding." << i << "." << name << "=" << literal << "\n";
        }
    }
    out << "status=" << (rep.pass() ? "pass" : "fail") << "\n";
    out << "elapsed_ms=" << rep.elapsed.count() << "\n";
    return out.str();
}

}  // namespace geninv
