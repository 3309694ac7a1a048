#include "geninv/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "geninv/verify.hpp"

namespace geninv {

namespace {

struct Literal {
    std::string text;
    std::size_t line = 0;  // 0 = inline argument
    std::string source;    // file path when line > 0, else argument label
};

std::vector<Literal> gather_literals(const std::vector<std::string>& positionals,
                                     const std::string& file) {
    std::vector<Literal> out;
    for (std::size_t i = 0; i < positionals.size(); ++i)
        out.push_back({positionals[i], 0, "argument " + std::to_string(i + 1)});
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw usage_error("cannot open file " + file);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            const auto begin = line.find_first_not_of(" \t\r");
            if (begin == std::string::npos) continue;
            const auto end = line.find_last_not_of(" \t\r");
            out.push_back({line.substr(begin, end - begin + 1), lineno, file});
        }
    }
    return out;
}

Element parse_literal(const RingPtr& ring, const Literal& lit) {
    try {
        return parse_element(ring, lit.text);
    } catch (const parse_error& e) {
        std::ostringstream msg;
        msg << lit.source << (lit.line ? " line " + std::to_string(lit.line) : "") << ", column "
            << e.column << ": " << e.what();
        throw usage_error(msg.str());
    }
}

std::vector<Element> expect_elements(const RingPtr& ring, const std::vector<std::string>& pos,
                                     const std::string& file, std::size_t n, const char* names) {
    std::vector<Literal> lits = gather_literals(pos, file);
    if (lits.size() != n)
        throw usage_error("expected " + std::to_string(n) + " element(s) (" + names + "), got " +
                          std::to_string(lits.size()));
    std::vector<Element> out;
    out.reserve(n);
    for (const Literal& l : lits) out.push_back(parse_literal(ring, l));
    return out;
}

void print_kv(std::ostream& out, const char* key, const Element& value) {
    out << key << "=" << format_element(value) << "\n";
}

int cmd_inner_inverse(std::ostream& out, const std::vector<Element>& args) {
    auto cert = inner_inverse(args[0]);
    if (!cert) {
        out << "regular=false\n";
        return 2;
    }
    out << "regular=true\n";
    print_kv(out, "inner", cert->inner);
    print_kv(out, "reflexive", cert->reflexive);
    return 0;
}

int cmd_green(std::ostream& out, const std::string& rel, const std::vector<Element>& args) {
    const Element& a = args[0];
    const Element& b = args[1];
    std::optional<GreenWitness> w;
    if (rel == "leqL") w = leq_l(a, b);
    else if (rel == "leqR") w = leq_r(a, b);
    else if (rel == "leqH") w = leq_h(a, b);
    else if (rel == "L") w = green_l(a, b);
    else if (rel == "R") w = green_r(a, b);
    else if (rel == "H") w = green_h(a, b);
    else throw usage_error("unknown relation '" + rel + "' (expected leqL, leqR, leqH, L, R, H)");
    if (!w) {
        out << "related=false\n";
        return 2;
    }
    out << "related=true\n";
    if (w->left_x) print_kv(out, "left_x", *w->left_x);
    if (w->left_y) print_kv(out, "left_y", *w->left_y);
    if (w->right_x) print_kv(out, "right_x", *w->right_x);
    if (w->right_y) print_kv(out, "right_y", *w->right_y);
    return 0;
}

int print_along_outcome(std::ostream& out, const AlongOutcome& res) {
    switch (res.status) {
        case AlongStatus::not_regular:
            out << "exists=false\n";
            out << "reason=m-not-regular\n";
            return 2;
        case AlongStatus::not_invertible:
            out << "exists=false\n";
            out << "reason=u-not-a-unit\n";
            print_kv(out, "u", *res.failed_unit);
            return 2;
        case AlongStatus::found:
            out << "exists=true\n";
            print_kv(out, "inverse", res.result->b);
            print_kv(out, "inner", res.result->inner_used);
            print_kv(out, "u", res.result->u);
            print_kv(out, "u_inv", res.result->u_inv);
            print_kv(out, "v", res.result->v);
            print_kv(out, "v_inv", res.result->v_inv);
            return 0;
    }
    return 1;
}

int cmd_inverse_along(std::ostream& out, const RingPtr& ring, const std::vector<Element>& args,
                      const std::string& inner_text) {
    std::optional<Element> inner;
    if (!inner_text.empty()) inner = parse_element(ring, inner_text);
    return print_along_outcome(out, inverse_along(args[0], args[1], inner));
}

int cmd_inverse_along_product(std::ostream& out, const RingPtr& ring,
                              const std::vector<Element>& args, const std::string& p_prime,
                              const std::string& q_prime, const std::string& inner_text) {
    const Element& a = args[0];
    const Element& p = args[1];
    const Element& m = args[2];
    const Element& q = args[3];
    print_kv(out, "d", p * m * q);
    std::optional<Element> pw, qw, inner;
    if (!p_prime.empty()) pw = parse_element(ring, p_prime);
    if (!q_prime.empty()) qw = parse_element(ring, q_prime);
    if (!inner_text.empty()) inner = parse_element(ring, inner_text);
    auto prob = make_product_problem(a, p, m, q, pw, qw, inner);
    if (!prob) {
        out << "exists=false\n";
        out << "reason=m-not-regular\n";
        return 2;
    }
    return print_along_outcome(out, inverse_along_product(*prob));
}

int print_block_outcome(std::ostream& out, const BlockOutcome& res) {
    switch (res.status) {
        case BlockStatus::d_not_regular:
            out << "exists=false\n";
            out << "reason=D-not-regular\n";
            return 2;
        case BlockStatus::not_invertible:
            out << "exists=false\n";
            out << "reason=xi-not-a-unit\n";
            print_kv(out, "xi", res.data->xi);
            return 2;
        case BlockStatus::found: {
            out << "exists=true\n";
            print_kv(out, "inverse", res.result->to_element());
            const BlockData& d = *res.data;
            print_kv(out, "u", d.u);
            print_kv(out, "alpha", d.alpha);
            print_kv(out, "beta", d.beta);
            print_kv(out, "xi", d.xi);
            print_kv(out, "xi_inv", *d.xi_inv);
            if (d.variant == BlockVariant::lower_220) {
                print_kv(out, "w", *d.w);
                print_kv(out, "c_along_d2", *d.c_along_d2);
            } else {
                print_kv(out, "e", *d.e);
                print_kv(out, "f", *d.f);
                print_kv(out, "s", *d.s);
                print_kv(out, "t", *d.t);
                print_kv(out, "a_along_s", *d.a_along_s);
                print_kv(out, "x1", *d.x1);
                print_kv(out, "x2", *d.x2);
            }
            return 0;
        }
    }
    return 1;
}

struct BlockEntryOptions {
    std::string a, b, c, d, d1, d2, d3, d4;
};

int cmd_block(std::ostream& out, const RingPtr& ring, const BlockEntryOptions& opt, bool general) {
    auto entry = [&](const std::string& text, const char* name) {
        if (text.empty()) throw usage_error(std::string("missing required entry --") + name);
        try {
            return parse_element(ring, text);
        } catch (const parse_error& e) {
            throw usage_error("--" + std::string(name) + ", column " + std::to_string(e.column) +
                              ": " + e.what());
        }
    };
    Block2x2 A{entry(opt.a, "a"), entry(opt.c, "c"), entry(opt.b, "b"), entry(opt.d, "d")};
    Block2x2 D{entry(opt.d1, "d1"), entry(opt.d3, "d3"), entry(opt.d2, "d2"),
               general ? entry(opt.d4, "d4") : zero(ring)};
    BlockOutcome res = general ? inverse_along_general(A, D) : inverse_along_220(A, D);
    return print_block_outcome(out, res);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact generalized inverses in unital rings"};
    app.require_subcommand(1);

    std::string ring_spec, file;
    std::vector<std::string> positionals;
    std::string rel = "H", inner_text, p_prime, q_prime;
    BlockEntryOptions block_opt;
    std::string theorem;
    bool exhaustive = false;
    std::uint64_t seed = 0, count = 0;
    bool seed_set = false, count_set = false;

    // Element literals are taken from the unparsed remainder rather than a
    // CLI11 vector option: CLI11 would split bracketed values like
    // [[1,0],[0,1]] on commas.
    auto add_common = [&](CLI::App* sub, int n_positionals, const char* names) {
        sub->add_option("--ring", ring_spec, "ring spec: Z:<n> | GF:<p> | M:<k>:<base> | Q")
            ->required();
        if (n_positionals > 0) {
            sub->allow_extras(true);
            sub->description(sub->get_description() + " (elements: " + names + ")");
            sub->add_option("--file", file, "read element literals from a file, one per line");
        }
        return sub;
    };
    auto take_positionals = [&](CLI::App* sub) {
        for (const std::string& arg : sub->remaining()) {
            if (arg.rfind("--", 0) == 0) throw usage_error("unknown option '" + arg + "'");
            positionals.push_back(arg);
        }
    };

    CLI::App* c_inner = add_common(app.add_subcommand("inner-inverse",
                                                      "inner and reflexive inverse of a"),
                                   1, "a");
    CLI::App* c_green = add_common(app.add_subcommand("green", "Green preorder/relation decision"),
                                   2, "a b");
    c_green->add_option("--rel", rel, "one of leqL, leqR, leqH, L, R, H (default H)");
    CLI::App* c_along = add_common(app.add_subcommand("inverse-along", "inverse of a along m"), 2,
                                   "a m");
    c_along->add_option("--inner", inner_text, "inner inverse of m to use (validated)");
    CLI::App* c_prod = add_common(
        app.add_subcommand("inverse-along-product", "inverse of a along p*m*q"), 4, "a p m q");
    c_prod->add_option("--p-prime", p_prime, "witness p' with p'*p*m = m");
    c_prod->add_option("--q-prime", q_prime, "witness q' with m*q*q' = m");
    c_prod->add_option("--inner", inner_text, "inner inverse of m to use (validated)");

    auto add_block_entries = [&](CLI::App* sub, bool with_d4) {
        sub->add_option("--ring", ring_spec, "base ring spec")->required();
        sub->add_option("--a", block_opt.a, "entry (0,0) of A")->required();
        sub->add_option("--c", block_opt.c, "entry (0,1) of A")->required();
        sub->add_option("--b", block_opt.b, "entry (1,0) of A")->required();
        sub->add_option("--d", block_opt.d, "entry (1,1) of A")->required();
        sub->add_option("--d1", block_opt.d1, "entry (0,0) of D")->required();
        sub->add_option("--d3", block_opt.d3, "entry (0,1) of D")->required();
        sub->add_option("--d2", block_opt.d2, "entry (1,0) of D")->required();
        if (with_d4) sub->add_option("--d4", block_opt.d4, "entry (1,1) of D")->required();
    };
    CLI::App* c_220 = app.add_subcommand("block-220", "inverse along a 2x2 matrix with zero (2,2) entry");
    add_block_entries(c_220, false);
    CLI::App* c_gen = app.add_subcommand("block-general", "inverse along a 2x2 matrix, d4 regular");
    add_block_entries(c_gen, true);

    auto add_mode = [&](CLI::App* sub) {
        sub->add_flag("--exhaustive", exhaustive, "cover the full tuple space");
        sub->add_option("--seed", seed, "seed for sampled mode")->each([&](const std::string&) {
            seed_set = true;
        });
        sub->add_option("--count", count, "number of hypothesis-passing samples")
            ->each([&](const std::string&) { count_set = true; });
    };
    CLI::App* c_verify = app.add_subcommand("verify", "run a registered theorem check");
    c_verify->add_option("--ring", ring_spec, "ring spec")->required();
    c_verify->add_option("--theorem", theorem, "theorem id (see README)")->required();
    add_mode(c_verify);
    CLI::App* c_search = app.add_subcommand("search-question",
                                            "search 2x2 matrices whose inverse exists outside the "
                                            "closed-form hypotheses");
    c_search->add_option("--ring", ring_spec, "base ring spec")->required();
    add_mode(c_search);

    std::vector<std::string> full;
    full.reserve(args.size() + 1);
    full.push_back("geninv");
    full.insert(full.end(), args.begin(), args.end());
    std::vector<char*> argv;
    argv.reserve(full.size());
    for (std::string& s : full) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        std::optional<SampledMode> mode;
        if (seed_set || count_set) {
            if (exhaustive) throw usage_error("--exhaustive conflicts with --seed/--count");
            if (!seed_set || !count_set)
                throw usage_error("sampled mode needs both --seed and --count");
            mode = SampledMode{seed, count};
        }

        if (app.got_subcommand(c_verify)) {
            auto id = theorem_from_name(theorem);
            if (!id) {
                std::string known;
                for (TheoremId t : all_theorems())
                    known += std::string(known.empty() ? "" : ", ") + std::string(theorem_name(t));
                throw usage_error("unknown theorem '" + theorem + "' (known: " + known + ")");
            }
            VerificationReport rep = run_check(*id, parse_ring_spec(ring_spec), mode);
            out << serialize_report(rep);
            return rep.pass() ? 0 : 2;
        }
        if (app.got_subcommand(c_search)) {
            VerificationReport rep = search_question(parse_ring_spec(ring_spec), mode);
            out << serialize_report(rep);
            return rep.pass() ? 0 : 2;
        }

        RingPtr ring = parse_ring_spec(ring_spec);
        if (app.got_subcommand(c_inner)) {
            take_positionals(c_inner);
            return cmd_inner_inverse(out, expect_elements(ring, positionals, file, 1, "a"));
        }
        if (app.got_subcommand(c_green)) {
            take_positionals(c_green);
            return cmd_green(out, rel, expect_elements(ring, positionals, file, 2, "a b"));
        }
        if (app.got_subcommand(c_along)) {
            take_positionals(c_along);
            return cmd_inverse_along(out, ring, expect_elements(ring, positionals, file, 2, "a m"),
                                     inner_text);
        }
        if (app.got_subcommand(c_prod)) {
            take_positionals(c_prod);
            return cmd_inverse_along_product(
                out, ring, expect_elements(ring, positionals, file, 4, "a p m q"), p_prime,
                q_prime, inner_text);
        }
        if (app.got_subcommand(c_220)) return cmd_block(out, ring, block_opt, false);
        if (app.got_subcommand(c_gen)) return cmd_block(out, ring, block_opt, true);
        throw usage_error("no subcommand selected");
    } catch (const usage_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const capability_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const invariant_violation& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace geninv
