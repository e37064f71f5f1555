#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ssv/enumerate.hpp"
#include "ssv/json_io.hpp"

namespace {

using namespace ssv;

struct GlobalOpts {
    bool json = false;
    std::uint64_t seed = 1;
    Int height_cap = 16;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw domain_error("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Arguments starting with '@' name a file holding the actual value.
std::string maybe_file(const std::string& arg) {
    if (!arg.empty() && arg.front() == '@') return slurp(arg.substr(1));
    return arg;
}

Json parse_json_text(const std::string& text, const char* what) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw domain_error(std::string(what) + " is not valid JSON");
    return j;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(item);
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

Int parse_int(const std::string& s, const char* what) {
    try {
        size_t used = 0;
        const Int n = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return n;
    } catch (const std::exception&) {
        throw domain_error(std::string(what) + ": '" + s + "' is not an integer");
    }
}

std::vector<Int> parse_int_list(const std::string& s, const char* what) {
    std::vector<Int> out;
    for (const std::string& item : split_on(s, ',')) out.push_back(parse_int(item, what));
    return out;
}

BettiVector parse_big_list(const std::string& s, const char* what) {
    BettiVector out;
    for (const std::string& item : split_on(s, ',')) {
        try {
            out.emplace_back(item);
        } catch (const std::exception&) {
            throw domain_error(std::string(what) + ": '" + item + "' is not an integer");
        }
    }
    return out;
}

BigRat parse_rat(const std::string& s, const char* what) {
    try {
        return BigRat(s);
    } catch (const std::exception&) {
        throw domain_error(std::string(what) + ": '" + s + "' is not a rational");
    }
}

// Coordinate vector: comma-separated integers, zero-padded up to the rank so
// short prefixes like "1,5" address the first basis vectors.
LatVec parse_latvec(const std::string& s, int rank, const char* what) {
    LatVec x = s.empty() || s == "0" ? LatVec{} : parse_int_list(s, what);
    if (static_cast<int>(x.size()) > rank)
        throw domain_error(std::string(what) + " has more than rank = " + std::to_string(rank) +
                           " coordinates");
    x.resize(static_cast<size_t>(rank), 0);
    return x;
}

// Mukai vector: either a JSON object {"r":..,"c1":[..],"s":..} or the compact
// form "r;c1;s" with c1 a comma list (zero-padded, "0" = zero vector).
MukaiVector parse_mukai_arg(const std::string& raw, int rank) {
    const std::string text = maybe_file(raw);
    const size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        return mukai_from_json(parse_json_text(text, "Mukai vector"));
    const std::vector<std::string> parts = split_on(text, ';');
    if (parts.size() != 3)
        throw domain_error("Mukai vector must be JSON or 'r;c1,...;s', got '" + text + "'");
    MukaiVector v;
    v.r = parse_int(parts[0], "Mukai r");
    v.c1 = parse_latvec(parts[1], rank, "Mukai c1");
    v.s = parse_int(parts[2], "Mukai s");
    return v;
}

// Slope multiset: comma-separated "SLOPExMULT" entries, e.g. "1/2x4" or "1x22".
SlopeMultiset parse_slopes_arg(const std::string& s) {
    std::vector<std::pair<BigRat, Int>> raw;
    for (const std::string& entry : split_on(maybe_file(s), ',')) {
        const size_t x = entry.rfind('x');
        if (x == std::string::npos)
            throw domain_error("slope entry '" + entry + "' is not of the form SLOPExMULT");
        raw.emplace_back(parse_rat(entry.substr(0, x), "slope"),
                         parse_int(entry.substr(x + 1), "multiplicity"));
    }
    return make_slopes(std::move(raw));
}

// Valuation list: comma-separated rationals, with "inf" for +infinity.
std::vector<std::optional<BigRat>> parse_vals_arg(const std::string& s) {
    std::vector<std::optional<BigRat>> out;
    for (const std::string& item : split_on(maybe_file(s), ',')) {
        if (item == "inf" || item == "oo")
            out.push_back(std::nullopt);
        else
            out.push_back(parse_rat(item, "valuation"));
    }
    return out;
}

std::string join_ints(const LatVec& x) {
    std::string out;
    for (size_t i = 0; i < x.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(x[i]);
    }
    return out;
}

std::string render_rat(const BigRat& q) {
    const BigInt num = numerator(q), den = denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string render_mukai(const MukaiVector& v) {
    return "(" + std::to_string(v.r) + "; " + join_ints(v.c1) + "; " + std::to_string(v.s) + ")";
}

std::string render_twisted(const TwistedMukaiVector& v) {
    return "(" + std::to_string(v.r) + "; " + join_ints(v.c1) + "; " + render_rat(v.s) + ")";
}

std::string render_slopes(const SlopeMultiset& s) {
    if (s.entries.empty()) return "(empty)";
    std::string out;
    for (size_t i = 0; i < s.entries.size(); ++i) {
        if (i) out += ", ";
        out += render_rat(s.entries[i].first) + " x" + std::to_string(s.entries[i].second);
    }
    return out;
}

std::string render_polygon(const NewtonPolygon& np) {
    std::string out;
    for (size_t i = 0; i < np.vertices.size(); ++i) {
        if (i) out += " ";
        out += "(" + std::to_string(np.vertices[i].first) + "," +
               render_rat(np.vertices[i].second) + ")";
    }
    return out;
}

void print_validation(const LatticeValidation& c) {
    std::cout << "even: " << (c.even ? "yes" : "no") << "\n"
              << "rank: " << c.rank << "\n"
              << "signature: (" << c.sig.first << "," << c.sig.second << ")\n"
              << "|det|: " << c.abs_det.str() << "\n"
              << "v_p(|det|): " << c.det_p_exponent << "\n"
              << "sigma computed: " << c.sigma_computed << "\n"
              << "matches requested: " << (c.matches_requested ? "yes" : "no") << "\n";
}

void emit(const GlobalOpts& g, const Json& j, const std::function<void()>& text) {
    if (g.json)
        std::cout << j.dump(2) << "\n";
    else
        text();
}

// Catalog lattice selection shared by the mukai/search/report commands.
struct LatticeSel {
    Int p = 0;
    int sigma = 1;
    std::string kind = "k3";
    std::string variant = "auto";
};

struct BuiltLattice {
    IntLattice ns;
    std::optional<SSK3Lattice> X;
    std::optional<SSAbelianLattice> A;
};

BuiltLattice build_sel(const LatticeSel& sel) {
    BuiltLattice out;
    if (kind_from_string(sel.kind) == ModuliKind::k3) {
        if (sel.variant == "auto")
            out.X = pick_k3_variant(sel.p, sel.sigma);
        else
            out.X = build_k3_ns(sel.p, sel.sigma, variant_from_string(sel.variant));
        out.ns = out.X->ns;
    } else {
        out.A = build_abelian_ns(sel.p, sel.sigma);
        out.ns = out.A->ns;
    }
    return out;
}

void add_lattice_opts(CLI::App* cmd, LatticeSel& sel, bool with_variant = false) {
    cmd->add_option("--p", sel.p, "characteristic (prime)")->required();
    cmd->add_option("--sigma", sel.sigma, "Artin invariant (k3: 1..10, abelian: 1..2)");
    cmd->add_option("--artin", sel.sigma, "alias for --sigma on abelian lattices");
    cmd->add_option("--kind", sel.kind, "surface kind")
        ->check(CLI::IsMember({"k3", "abelian", "kummer"}));
    if (with_variant)
        cmd->add_option("--variant", sel.variant, "catalog variant")
            ->check(CLI::IsMember({"auto", "literal", "disc_corrected"}));
}

LatVec polarization_of(const BuiltLattice& built) {
    if (built.A) return find_principal_polarization(*built.A);
    auto hit = find_first_with_value(built.ns, 2, 8);
    if (!hit) throw internal_error("no vector of square 2 within height 8 in a catalog lattice");
    return *hit;
}

void print_report_text(const ReportBundle& R) {
    std::cout << "inputs: p = " << R.p << ", sigma = " << R.sigma << ", kind = "
              << kind_to_string(R.kind) << ", v = " << render_mukai(R.v) << "\n";
    std::cout << "ns branch: " << R.branch;
    if (R.variant) std::cout << " [" << variant_to_string(*R.variant) << "]";
    std::cout << "\n";
    print_validation(R.ns_check);
    std::cout << "polarization: (" << join_ints(R.polarization) << "), square "
              << norm(R.ns, R.polarization) << "\n";
    std::cout << "generality twist: (" << join_ints(R.generality_twist) << ")\n";
    std::cout << "v general: " << render_mukai(R.v_general) << "\n";
    std::cout << "elliptic witness: chain length " << R.elliptic.chain.size() << ", x = ("
              << join_ints(R.elliptic.x) << "), height " << R.elliptic.height_used
              << ", verified\n";
    std::cout << "moduli dimension: " << R.dim << "\n";
    if (R.moduli) {
        std::cout << "vperp rank: " << R.moduli->vperp_rank << ", b2 target: "
                  << R.moduli->b2_target << ", certified: "
                  << (R.moduli->shioda_certified ? "yes" : "no") << "\n";
    } else {
        std::cout << "b2 certificate: not applicable below dimension 4\n";
    }
    if (R.h2_slopes)
        std::cout << "h2 slopes: " << render_slopes(*R.h2_slopes) << " (supersingular: "
                  << (R.h2_supersingular ? "yes" : "no") << ")\n";
    std::cout << "motive tate type: " << (R.chow.tate_type ? "yes" : "no") << "\n";
    std::cout << "betti:";
    for (const BigInt& b : R.betti) std::cout << " " << b.str();
    std::cout << "\n";
    for (const ChowRow& row : R.chow.rows)
        std::cout << "CH^" << row.codim << ": rank " << row.ch_rank.str() << ", ab part "
                  << row.ab_dim.str() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"supersingular surface lattices, searches, crystals and motives"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_flag("--json", g.json, "emit JSON instead of text");
    auto* seed_opt = app.add_option("--seed", g.seed, "seed for randomized subcommands");
    auto* cap_opt = app.add_option("--height-cap", g.height_cap, "search height cap");

    int exit_code = 0;

    // ns -------------------------------------------------------------------
    auto* ns_cmd = app.add_subcommand("ns", "catalog Neron-Severi lattices");
    ns_cmd->require_subcommand(1);

    auto sel_build = std::make_shared<LatticeSel>();
    auto* nb = ns_cmd->add_subcommand("build", "build one catalog lattice");
    add_lattice_opts(nb, *sel_build, true);
    nb->callback([&g, sel_build] {
        const BuiltLattice built = build_sel(*sel_build);
        if (built.X) {
            emit(g, k3_to_json(*built.X), [&] {
                std::cout << "branch: " << built.X->branch << " ["
                          << variant_to_string(built.X->variant) << "]\n";
                print_validation(built.X->check);
            });
        } else {
            emit(g, abelian_to_json(*built.A), [&] {
                std::cout << "branch: " << built.A->branch << "\n";
                print_validation(built.A->check);
            });
        }
    });

    auto audit_p = std::make_shared<Int>(0);
    auto* na = ns_cmd->add_subcommand("audit", "compare both variants across sigma = 1..10");
    na->add_option("--p", *audit_p, "characteristic (prime)")->required();
    na->callback([&g, audit_p] {
        const std::vector<AuditRow> rows = audit_k3(*audit_p);
        emit(g, audit_rows_to_json(rows), [&] {
            for (const AuditRow& row : rows) {
                std::cout << "sigma " << row.sigma << " " << variant_to_string(row.variant)
                          << " " << row.branch << ": ";
                if (!row.built) {
                    std::cout << "not built (" << row.error << ")\n";
                    continue;
                }
                std::cout << (row.check.even ? "even" : "odd") << ", v_p(|det|) = "
                          << row.check.det_p_exponent << ", sigma_computed = "
                          << row.check.sigma_computed << ", matches = "
                          << (row.check.matches_requested ? "yes" : "no") << "\n";
            }
        });
    });

    // mukai ----------------------------------------------------------------
    auto* mukai_cmd = app.add_subcommand("mukai", "Mukai lattice operations");
    mukai_cmd->require_subcommand(1);

    struct MukaiArgs {
        LatticeSel sel;
        std::string v, w, L, e;
    };

    auto pair_args = std::make_shared<MukaiArgs>();
    auto* mp = mukai_cmd->add_subcommand("pair", "Mukai pairing of two vectors");
    add_lattice_opts(mp, pair_args->sel);
    mp->add_option("--v", pair_args->v, "first vector")->required();
    mp->add_option("--w", pair_args->w, "second vector")->required();
    mp->callback([&g, pair_args] {
        const BuiltLattice built = build_sel(pair_args->sel);
        const MukaiVector v = parse_mukai_arg(pair_args->v, built.ns.rank);
        const MukaiVector w = parse_mukai_arg(pair_args->w, built.ns.rank);
        const Int vw = mukai_pairing(built.ns, v, w);
        const Int vv = mukai_norm(built.ns, v), ww = mukai_norm(built.ns, w);
        emit(g, Json{{"pairing", vw}, {"v_norm", vv}, {"w_norm", ww}}, [&] {
            std::cout << "<v,w> = " << vw << "\n<v,v> = " << vv << "\n<w,w> = " << ww << "\n";
        });
    });

    auto twist_args = std::make_shared<MukaiArgs>();
    auto* mt = mukai_cmd->add_subcommand("twist", "line-bundle twist exp(L)");
    add_lattice_opts(mt, twist_args->sel);
    mt->add_option("--v", twist_args->v, "vector to twist")->required();
    mt->add_option("--L", twist_args->L, "twisting class (comma list)")->required();
    mt->callback([&g, twist_args] {
        const BuiltLattice built = build_sel(twist_args->sel);
        const MukaiVector v = parse_mukai_arg(twist_args->v, built.ns.rank);
        const LatVec L = parse_latvec(twist_args->L, built.ns.rank, "L");
        const MukaiVector out = exp_twist(built.ns, v, L);
        emit(g, mukai_to_json(out), [&] { std::cout << render_mukai(out) << "\n"; });
    });

    auto refl_args = std::make_shared<MukaiArgs>();
    auto* mr = mukai_cmd->add_subcommand("reflect", "reflection in a (-2)-vector");
    add_lattice_opts(mr, refl_args->sel);
    mr->add_option("--v", refl_args->v, "vector to reflect")->required();
    mr->add_option("--e", refl_args->e, "(-2)-vector")->required();
    mr->callback([&g, refl_args] {
        const BuiltLattice built = build_sel(refl_args->sel);
        const MukaiVector v = parse_mukai_arg(refl_args->v, built.ns.rank);
        const MukaiVector e = parse_mukai_arg(refl_args->e, built.ns.rank);
        const MukaiVector out = spherical_reflect(built.ns, v, e);
        emit(g, mukai_to_json(out), [&] { std::cout << render_mukai(out) << "\n"; });
    });

    auto gen_args = std::make_shared<MukaiArgs>();
    auto* mg = mukai_cmd->add_subcommand("general-twist",
                                         "twist making v numerically general for H");
    add_lattice_opts(mg, gen_args->sel);
    mg->add_option("--v", gen_args->v, "vector")->required();
    mg->callback([&g, gen_args] {
        const BuiltLattice built = build_sel(gen_args->sel);
        const MukaiVector v = parse_mukai_arg(gen_args->v, built.ns.rank);
        const LatVec H = polarization_of(built);
        const LatVec L = find_generality_twist(built.ns, v, H, gen_args->sel.p);
        const MukaiVector out = exp_twist(built.ns, v, L);
        if (!is_general_numeric(built.ns, out, H))
            throw internal_error("generality twist failed re-verification");
        emit(g,
             Json{{"polarization", latvec_to_json(H)},
                  {"twist", latvec_to_json(L)},
                  {"v_general", mukai_to_json(out)},
                  {"verified", true}},
             [&] {
                 std::cout << "polarization: (" << join_ints(H) << ")\n"
                           << "twist: (" << join_ints(L) << ")\n"
                           << "v general: " << render_mukai(out) << "\n";
             });
    });

    // search ---------------------------------------------------------------
    auto* search_cmd = app.add_subcommand("search", "lattice-theoretic searches");
    search_cmd->require_subcommand(1);

    auto ell_args = std::make_shared<MukaiArgs>();
    auto* se = search_cmd->add_subcommand("elliptic", "elliptic class witness for v");
    add_lattice_opts(se, ell_args->sel);
    se->add_option("--v", ell_args->v, "Mukai vector")->required();
    se->callback([&g, ell_args] {
        const BuiltLattice built = build_sel(ell_args->sel);
        const MukaiVector v = parse_mukai_arg(ell_args->v, built.ns.rank);
        const EllipticWitness wit =
            built.A ? find_elliptic_class_abelian(*built.A, v, g.height_cap)
                    : find_elliptic_class(built.ns, v, ell_args->sel.p, g.height_cap);
        validate_elliptic_witness(built.ns, v, ell_args->sel.p, wit);
        Json j = elliptic_to_json(wit);
        j["verified"] = true;
        emit(g, j, [&] {
            std::cout << "chain length: " << wit.chain.size() << "\n"
                      << "v out: " << render_mukai(wit.v_out) << "\n"
                      << "x: (" << join_ints(wit.x) << ")\n"
                      << "height used: " << wit.height_used << "\nverified\n";
        });
    });

    struct UntwistArgs {
        LatticeSel sel;
        std::string L;
        std::string which = "auto";
    };
    auto un_args = std::make_shared<UntwistArgs>();
    auto* su = search_cmd->add_subcommand("untwist", "untwisting pair (tau, w) for L");
    add_lattice_opts(su, un_args->sel, true);
    su->add_option("--L", un_args->L, "line bundle class (comma list)")->required();
    su->add_option("--case", un_args->which, "forced case")
        ->check(CLI::IsMember({"auto", "I", "II"}));
    su->callback([&g, un_args] {
        if (kind_from_string(un_args->sel.kind) != ModuliKind::k3)
            throw domain_error("untwisting pairs are defined on the K3 catalog only");
        const BuiltLattice built = build_sel(un_args->sel);
        const LatVec L = parse_latvec(un_args->L, built.ns.rank, "L");
        const UntwistCase which = un_args->which == "I"    ? UntwistCase::case_i
                                  : un_args->which == "II" ? UntwistCase::case_ii
                                                           : UntwistCase::automatic;
        const UntwistWitness wit = find_untwisting_pair(*built.X, L, which, g.height_cap);
        validate_untwist_witness(built.ns, un_args->sel.p, wit);
        Json j = untwist_to_json(wit);
        j["verified"] = true;
        emit(g, j, [&] {
            std::cout << "case: " << (wit.used == UntwistCase::case_i ? "I" : "II") << "\n"
                      << "tau: " << render_twisted(wit.tau) << "\n"
                      << "w: " << render_twisted(wit.w) << "\n"
                      << "<tau,w> = " << render_rat(wit.pairing_value) << "\nverified\n";
        });
    });

    auto pol_sel = std::make_shared<LatticeSel>();
    auto* sp = search_cmd->add_subcommand("polarization", "first square-2 class");
    add_lattice_opts(sp, *pol_sel);
    sp->callback([&g, pol_sel] {
        const BuiltLattice built = build_sel(*pol_sel);
        const LatVec H = polarization_of(built);
        emit(g, Json{{"polarization", latvec_to_json(H)}, {"square", norm(built.ns, H)}}, [&] {
            std::cout << "(" << join_ints(H) << "), square " << norm(built.ns, H) << "\n";
        });
    });

    // crystal ----------------------------------------------------------------
    auto* crystal_cmd = app.add_subcommand("crystal", "Newton polygons and slopes");
    crystal_cmd->require_subcommand(1);

    struct CrystalArgs {
        std::string vals, slopes;
        Int degree = 0, k = 0, n = 0;
    };

    auto cn_args = std::make_shared<CrystalArgs>();
    auto* cn = crystal_cmd->add_subcommand("newton", "polygon from Frobenius valuations");
    cn->add_option("--vals", cn_args->vals, "comma list of rationals, 'inf' allowed")->required();
    cn->callback([&g, cn_args] {
        const NewtonPolygon np = newton_from_valuations(parse_vals_arg(cn_args->vals));
        const SlopeMultiset s = slopes_of(np);
        emit(g, Json{{"polygon", polygon_to_json(np)}, {"slopes", slopes_to_json(s)}}, [&] {
            std::cout << "polygon: " << render_polygon(np) << "\n"
                      << "slopes: " << render_slopes(s) << "\n";
        });
    });

    auto cc_args = std::make_shared<CrystalArgs>();
    auto* cc = crystal_cmd->add_subcommand("check", "supersingularity of a slope multiset");
    cc->add_option("--slopes", cc_args->slopes, "entries SLOPExMULT, comma separated")->required();
    cc->add_option("--degree", cc_args->degree, "cohomological degree")->required();
    cc->callback([&g, cc_args] {
        const SlopeMultiset s = parse_slopes_arg(cc_args->slopes);
        const bool ss = is_supersingular(s, cc_args->degree);
        emit(g,
             Json{{"slopes", slopes_to_json(s)},
                  {"degree", cc_args->degree},
                  {"supersingular", ss}},
             [&] { std::cout << (ss ? "supersingular" : "not supersingular") << "\n"; });
    });

    auto cw_args = std::make_shared<CrystalArgs>();
    auto* cw = crystal_cmd->add_subcommand("wedge", "exterior power of a slope multiset");
    cw->add_option("--slopes", cw_args->slopes, "entries SLOPExMULT")->required();
    cw->add_option("--k", cw_args->k, "exterior power")->required();
    cw->callback([&g, cw_args] {
        const SlopeMultiset out = wedge_slopes(parse_slopes_arg(cw_args->slopes), cw_args->k);
        emit(g, slopes_to_json(out), [&] { std::cout << render_slopes(out) << "\n"; });
    });

    auto ct_args = std::make_shared<CrystalArgs>();
    auto* ct = crystal_cmd->add_subcommand("twist", "Tate twist of a slope multiset");
    ct->add_option("--slopes", ct_args->slopes, "entries SLOPExMULT")->required();
    ct->add_option("--n", ct_args->n, "twist by 1(-n): slopes shift up by n")->required();
    ct->callback([&g, ct_args] {
        const SlopeMultiset out = tate_twist(parse_slopes_arg(ct_args->slopes), ct_args->n);
        emit(g, slopes_to_json(out), [&] { std::cout << render_slopes(out) << "\n"; });
    });

    auto ch_args = std::make_shared<CrystalArgs>();
    auto* ch = crystal_cmd->add_subcommand("h2", "degree-2 slopes of the moduli space");
    ch->add_option("--slopes", ch_args->slopes, "surface H^2 slopes (rank 6 or 22)")->required();
    ch->callback([&g, ch_args] {
        const SlopeMultiset out = hilb_or_kummer_h2(parse_slopes_arg(ch_args->slopes));
        emit(g, slopes_to_json(out), [&] { std::cout << render_slopes(out) << "\n"; });
    });

    // motive -----------------------------------------------------------------
    auto* motive_cmd = app.add_subcommand("motive", "supersingular abelian motives");
    motive_cmd->require_subcommand(1);

    struct MotiveArgs {
        Int g = 0, n = 0;
        std::string route = "direct";
        std::string betti;
        bool audit = false;
    };

    auto ma_args = std::make_shared<MotiveArgs>();
    auto* ma = motive_cmd->add_subcommand("abelian", "motive of a g-fold abelian product");
    ma->add_option("--g", ma_args->g, "dimension g")->required();
    ma->add_option("--route", ma_args->route, "computation route")
        ->check(CLI::IsMember({"direct", "schur"}));
    ma->callback([&g, ma_args] {
        const SSMotive m = ma_args->route == "schur" ? abelian_motive_schur(ma_args->g)
                                                     : abelian_motive_direct(ma_args->g);
        emit(g, Json{{"motive", motive_to_json(m)}, {"betti", betti_to_json(betti_of(m))}}, [&] {
            std::cout << "betti:";
            for (const BigInt& b : betti_of(m)) std::cout << " " << b.str();
            std::cout << "\n";
        });
    });

    auto mh_args = std::make_shared<MotiveArgs>();
    auto* mh = motive_cmd->add_subcommand("hilbert", "motive of a Hilbert scheme of points");
    mh->add_option("--n", mh_args->n, "number of points")->required();
    mh->add_option("--betti", mh_args->betti, "surface Betti vector (default K3)");
    mh->callback([&g, mh_args] {
        const BettiVector surface = mh_args->betti.empty()
                                        ? BettiVector{1, 0, 22, 0, 1}
                                        : parse_big_list(mh_args->betti, "betti");
        const SSMotive m = hilb_motive(canonical_from_betti(surface), mh_args->n);
        emit(g, Json{{"motive", motive_to_json(m)}, {"betti", betti_to_json(betti_of(m))}}, [&] {
            std::cout << "betti:";
            for (const BigInt& b : betti_of(m)) std::cout << " " << b.str();
            std::cout << "\n";
        });
    });

    auto mk_args = std::make_shared<MotiveArgs>();
    auto* mk = motive_cmd->add_subcommand("kummer", "generalized Kummer Betti numbers");
    mk->add_option("--n", mk_args->n, "Kummer index (dimension 2n)")->required();
    mk->add_flag("--audit", mk_args->audit, "emit the inventory-vs-Betti rank audit");
    mk->callback([&g, mk_args] {
        if (mk_args->audit) {
            const KummerAudit audit = kummer_audit(mk_args->n);
            emit(g, kummer_audit_to_json(audit), [&] {
                std::cout << "summands: " << audit.summands.size() << "\n"
                          << "inventory rank: " << audit.inventory_rank.str() << "\n"
                          << "betti rank: " << audit.betti_rank.str() << "\n"
                          << "consistent: " << (audit.consistent ? "yes" : "no") << "\n";
            });
            return;
        }
        const BettiVector b = kummer_betti(mk_args->n);
        emit(g, betti_to_json(b), [&] {
            std::cout << "betti:";
            for (const BigInt& x : b) std::cout << " " << x.str();
            std::cout << "\n";
        });
    });

    auto mc_args = std::make_shared<MotiveArgs>();
    auto* mc = motive_cmd->add_subcommand("canonical", "canonical Tate form from Betti numbers");
    mc->add_option("--betti", mc_args->betti, "Betti vector (comma list)")->required();
    mc->callback([&g, mc_args] {
        const SSMotive m = canonical_from_betti(parse_big_list(mc_args->betti, "betti"));
        emit(g, motive_to_json(m), [&] {
            for (const auto& [twist, mult] : m.tate)
                std::cout << "1(-" << twist << ")^" << mult.str() << "\n";
            for (const auto& [twist, mult] : m.h1e)
                std::cout << "h1(E)(-" << twist << ")^" << mult.str() << "\n";
        });
    });

    auto mw_args = std::make_shared<MotiveArgs>();
    auto* mw = motive_cmd->add_subcommand("chow", "Chow-rank table from Betti numbers");
    mw->add_option("--betti", mw_args->betti, "Betti vector (comma list)")->required();
    mw->callback([&g, mw_args] {
        const ChowReport report = chow_rank_report(parse_big_list(mw_args->betti, "betti"));
        emit(g, chow_to_json(report), [&] {
            std::cout << "tate type: " << (report.tate_type ? "yes" : "no") << "\n";
            for (const ChowRow& row : report.rows)
                std::cout << "CH^" << row.codim << ": rank " << row.ch_rank.str()
                          << ", ab part " << row.ab_dim.str() << "\n";
        });
    });

    // report -----------------------------------------------------------------
    auto rep_args = std::make_shared<MukaiArgs>();
    auto* rep = app.add_subcommand("report", "end-to-end bundle for (p, sigma, v, kind)");
    add_lattice_opts(rep, rep_args->sel);
    rep->add_option("--v", rep_args->v, "Mukai vector")->required();
    rep->callback([&g, rep_args] {
        const ModuliKind kind = kind_from_string(rep_args->sel.kind);
        const int rank = kind == ModuliKind::k3 ? 22 : 6;
        const MukaiVector v = parse_mukai_arg(rep_args->v, rank);
        const ReportBundle R =
            make_report(rep_args->sel.p, rep_args->sel.sigma, v, kind, g.height_cap);
        emit(g, report_to_json(R), [&] { print_report_text(R); });
    });

    // batch ------------------------------------------------------------------
    struct BatchArgs {
        std::string grid;
    };
    auto batch_args = std::make_shared<BatchArgs>();
    auto* batch = app.add_subcommand("batch", "run a grid of cells on a worker pool");
    batch->add_option("--grid", batch_args->grid, "grid file (JSON or TOML)")->required();
    batch->callback([&g, batch_args, seed_opt, cap_opt, &exit_code] {
        BatchSpec spec = batch_spec_from_text(slurp(batch_args->grid));
        if (seed_opt->count() > 0) spec.seed = g.seed;
        if (cap_opt->count() > 0) spec.height_cap = g.height_cap;
        const BatchResult result = run_batch(spec);
        emit(g, batch_to_json(result), [&] {
            for (const BatchCell& cell : result.cells) {
                std::cout << "p=" << cell.p << " sigma=" << cell.sigma << " kind="
                          << kind_to_string(cell.kind) << " vectors=" << cell.vectors << " "
                          << (cell.pass ? "pass" : "FAIL") << " ("
                          << static_cast<int>(cell.seconds * 1000) << " ms)";
                if (!cell.pass) std::cout << " " << cell.error;
                std::cout << "\n";
            }
            std::cout << (result.all_pass ? "all cells passed" : "some cells failed") << "\n";
        });
        if (!result.all_pass) exit_code = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ssv::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ssv::internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return exit_code;
}
