#include "ssv/json_io.hpp"

#include <cstdint>
#include <sstream>

namespace ssv {

namespace {

// Largest integer exactly representable in a double.
constexpr std::int64_t kSafeMax = 9007199254740991;

[[noreturn]] void bad(const std::string& what) { throw domain_error("bad JSON: " + what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) bad(std::string("expected an object with field '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) bad(std::string("missing field '") + key + "'");
    return *it;
}

Int int_from(const Json& j, const char* what) {
    if (!j.is_number_integer()) bad(std::string(what) + " must be a JSON integer");
    return j.get<Int>();
}

std::string string_from(const Json& j, const char* what) {
    if (!j.is_string()) bad(std::string(what) + " must be a JSON string");
    return j.get<std::string>();
}

std::string rat_string(const BigRat& q) {
    const BigInt num = numerator(q), den = denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace

Json big_to_json(const BigInt& n) {
    if (n >= -kSafeMax && n <= kSafeMax) return Json(static_cast<std::int64_t>(n));
    return Json(n.str());
}

BigInt big_from_json(const Json& j) {
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return BigInt(j.get<std::string>());
        } catch (const std::exception&) {
            bad("cannot parse integer string '" + j.get<std::string>() + "'");
        }
    }
    bad("integer must be a JSON integer or a decimal string");
}

Json rat_to_json(const BigRat& q) {
    if (denominator(q) == 1) return big_to_json(numerator(q));
    return Json(rat_string(q));
}

BigRat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return BigRat(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return BigRat(j.get<std::string>());
        } catch (const std::exception&) {
            bad("cannot parse rational string '" + j.get<std::string>() + "'");
        }
    }
    bad("rational must be a JSON integer or an 'a/b' string");
}

std::string kind_to_string(ModuliKind kind) {
    return kind == ModuliKind::k3 ? "k3" : "abelian";
}

ModuliKind kind_from_string(const std::string& s) {
    if (s == "k3") return ModuliKind::k3;
    if (s == "abelian" || s == "kummer" || s == "abelian_kummer") return ModuliKind::abelian_kummer;
    throw domain_error("unknown kind '" + s + "' (expected k3 or abelian)");
}

std::string variant_to_string(K3Variant variant) {
    return variant == K3Variant::literal ? "literal" : "disc_corrected";
}

K3Variant variant_from_string(const std::string& s) {
    if (s == "literal") return K3Variant::literal;
    if (s == "disc_corrected") return K3Variant::disc_corrected;
    throw domain_error("unknown variant '" + s + "' (expected literal or disc_corrected)");
}

Json latvec_to_json(const LatVec& x) {
    Json j = Json::array();
    for (Int c : x) j.push_back(c);
    return j;
}

LatVec latvec_from_json(const Json& j) {
    if (!j.is_array()) bad("coordinate vector must be an array");
    LatVec x;
    x.reserve(j.size());
    for (const Json& c : j) x.push_back(int_from(c, "coordinate"));
    return x;
}

Json lattice_to_json(const IntLattice& L) {
    Json gram = Json::array();
    for (const auto& row : L.gram) gram.push_back(latvec_to_json(row));
    return Json{{"rank", L.rank}, {"gram", gram}};
}

IntLattice lattice_from_json(const Json& j) {
    const Json& gj = field(j, "gram");
    if (!gj.is_array()) bad("gram must be an array of rows");
    std::vector<std::vector<Int>> gram;
    for (const Json& row : gj) gram.push_back(latvec_from_json(row));
    const Int rank = int_from(field(j, "rank"), "rank");
    if (rank < 0 || static_cast<size_t>(rank) != gram.size()) bad("rank does not match gram size");
    return IntLattice(static_cast<int>(rank), std::move(gram));
}

Json mukai_to_json(const MukaiVector& v) {
    return Json{{"r", v.r}, {"c1", latvec_to_json(v.c1)}, {"s", v.s}};
}

MukaiVector mukai_from_json(const Json& j) {
    MukaiVector v;
    v.r = int_from(field(j, "r"), "r");
    v.c1 = latvec_from_json(field(j, "c1"));
    v.s = int_from(field(j, "s"), "s");
    return v;
}

Json twisted_to_json(const TwistedMukaiVector& v) {
    return Json{{"r", v.r}, {"c1", latvec_to_json(v.c1)}, {"s", rat_to_json(v.s)}};
}

TwistedMukaiVector twisted_from_json(const Json& j, Int p) {
    return make_twisted(int_from(field(j, "r"), "r"), latvec_from_json(field(j, "c1")),
                        rat_from_json(field(j, "s")), p);
}

Json chain_to_json(const TransformChain& chain) {
    Json steps = Json::array();
    for (const TransformStep& step : chain) {
        if (const auto* tw = std::get_if<ExpTwistStep>(&step)) {
            steps.push_back(Json{{"type", "exp_twist"}, {"L", latvec_to_json(tw->L)}});
        } else {
            const auto& refl = std::get<SphericalReflectStep>(step);
            steps.push_back(Json{{"type", "reflect"}, {"e", mukai_to_json(refl.e)}});
        }
    }
    return steps;
}

TransformChain chain_from_json(const Json& j) {
    if (!j.is_array()) bad("transform chain must be an array");
    TransformChain chain;
    for (const Json& step : j) {
        const std::string type = string_from(field(step, "type"), "step type");
        if (type == "exp_twist") {
            chain.push_back(ExpTwistStep{latvec_from_json(field(step, "L"))});
        } else if (type == "reflect") {
            chain.push_back(SphericalReflectStep{mukai_from_json(field(step, "e"))});
        } else {
            bad("unknown transform step type '" + type + "'");
        }
    }
    return chain;
}

Json elliptic_to_json(const EllipticWitness& wit) {
    return Json{{"chain", chain_to_json(wit.chain)},
                {"v_out", mukai_to_json(wit.v_out)},
                {"x", latvec_to_json(wit.x)},
                {"height_used", wit.height_used}};
}

EllipticWitness elliptic_from_json(const Json& j) {
    EllipticWitness wit;
    wit.chain = chain_from_json(field(j, "chain"));
    wit.v_out = mukai_from_json(field(j, "v_out"));
    wit.x = latvec_from_json(field(j, "x"));
    wit.height_used = int_from(field(j, "height_used"), "height_used");
    return wit;
}

namespace {

std::string untwist_case_string(UntwistCase c) {
    switch (c) {
        case UntwistCase::case_i: return "I";
        case UntwistCase::case_ii: return "II";
        default: return "automatic";
    }
}

UntwistCase untwist_case_from(const std::string& s) {
    if (s == "I") return UntwistCase::case_i;
    if (s == "II") return UntwistCase::case_ii;
    if (s == "automatic") return UntwistCase::automatic;
    throw domain_error("unknown untwist case '" + s + "' (expected I, II or automatic)");
}

}  // namespace

Json untwist_to_json(const UntwistWitness& wit) {
    return Json{{"case", untwist_case_string(wit.used)},
                {"tau", twisted_to_json(wit.tau)},
                {"w", twisted_to_json(wit.w)},
                {"pairing", rat_to_json(wit.pairing_value)}};
}

UntwistWitness untwist_from_json(const Json& j, Int p) {
    UntwistWitness wit;
    wit.used = untwist_case_from(string_from(field(j, "case"), "case"));
    wit.tau = twisted_from_json(field(j, "tau"), p);
    wit.w = twisted_from_json(field(j, "w"), p);
    wit.pairing_value = rat_from_json(field(j, "pairing"));
    return wit;
}

Json validation_to_json(const LatticeValidation& check) {
    return Json{{"even", check.even},
                {"rank", check.rank},
                {"signature", Json::array({check.sig.first, check.sig.second})},
                {"abs_det", big_to_json(check.abs_det)},
                {"det_p_exponent", check.det_p_exponent},
                {"sigma_computed", check.sigma_computed},
                {"matches_requested", check.matches_requested}};
}

Json k3_to_json(const SSK3Lattice& X) {
    return Json{{"p", X.p},
                {"sigma", X.sigma},
                {"variant", variant_to_string(X.variant)},
                {"branch", X.branch},
                {"lattice", lattice_to_json(X.ns)},
                {"validation", validation_to_json(X.check)}};
}

Json abelian_to_json(const SSAbelianLattice& A) {
    return Json{{"p", A.p},
                {"artin", A.artin},
                {"branch", A.branch},
                {"lattice", lattice_to_json(A.ns)},
                {"validation", validation_to_json(A.check)}};
}

Json audit_rows_to_json(const std::vector<AuditRow>& rows) {
    Json out = Json::array();
    for (const AuditRow& row : rows) {
        Json r{{"sigma", row.sigma},
               {"variant", variant_to_string(row.variant)},
               {"branch", row.branch},
               {"built", row.built}};
        if (row.built)
            r["validation"] = validation_to_json(row.check);
        else
            r["error"] = row.error;
        out.push_back(std::move(r));
    }
    return out;
}

Json slopes_to_json(const SlopeMultiset& s) {
    Json out = Json::array();
    for (const auto& [slope, mult] : s.entries)
        out.push_back(Json::array({rat_string(slope), mult}));
    return out;
}

SlopeMultiset slopes_from_json(const Json& j) {
    if (!j.is_array()) bad("slope multiset must be an array of [slope, mult] pairs");
    std::vector<std::pair<BigRat, Int>> raw;
    for (const Json& entry : j) {
        if (!entry.is_array() || entry.size() != 2) bad("slope entry must be a [slope, mult] pair");
        raw.emplace_back(rat_from_json(entry[0]), int_from(entry[1], "multiplicity"));
    }
    return make_slopes(std::move(raw));
}

Json polygon_to_json(const NewtonPolygon& np) {
    Json out = Json::array();
    for (const auto& [x, y] : np.vertices) out.push_back(Json::array({x, rat_to_json(y)}));
    return out;
}

NewtonPolygon polygon_from_json(const Json& j) {
    if (!j.is_array()) bad("polygon must be an array of [x, y] vertices");
    NewtonPolygon np;
    for (const Json& vertex : j) {
        if (!vertex.is_array() || vertex.size() != 2) bad("vertex must be an [x, y] pair");
        np.vertices.emplace_back(int_from(vertex[0], "vertex x"), rat_from_json(vertex[1]));
    }
    validate_polygon(np);
    return np;
}

Json motive_to_json(const SSMotive& m) {
    Json tate = Json::object(), h1e = Json::object();
    for (const auto& [twist, mult] : m.tate) tate[std::to_string(twist)] = big_to_json(mult);
    for (const auto& [twist, mult] : m.h1e) h1e[std::to_string(twist)] = big_to_json(mult);
    return Json{{"tate", tate}, {"h1e", h1e}};
}

namespace {

void motive_map_from_json(const Json& j, const char* what, std::map<Int, BigInt>& out) {
    if (!j.is_object()) bad(std::string(what) + " must be an object keyed by twist");
    for (const auto& [key, value] : j.items()) {
        Int twist = 0;
        try {
            size_t used = 0;
            twist = std::stoll(key, &used);
            if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
            bad("twist key '" + key + "' is not an integer");
        }
        const BigInt mult = big_from_json(value);
        if (mult <= 0) bad("multiplicity for twist " + key + " must be positive");
        if (!out.emplace(twist, mult).second) bad("duplicate twist key '" + key + "'");
    }
}

}  // namespace

SSMotive motive_from_json(const Json& j) {
    SSMotive m;
    motive_map_from_json(field(j, "tate"), "tate", m.tate);
    motive_map_from_json(field(j, "h1e"), "h1e", m.h1e);
    for (const auto& [twist, mult] : m.tate) {
        (void)mult;
        if (twist < 0) bad("negative Tate twist in motive");
    }
    for (const auto& [twist, mult] : m.h1e) {
        (void)mult;
        if (twist < 0) bad("negative twist in motive");
    }
    return m;
}

Json betti_to_json(const BettiVector& b) {
    Json out = Json::array();
    for (const BigInt& n : b) out.push_back(big_to_json(n));
    return out;
}

BettiVector betti_from_json(const Json& j) {
    if (!j.is_array()) bad("Betti vector must be an array");
    BettiVector b;
    for (const Json& n : j) b.push_back(big_from_json(n));
    return b;
}

Json partition_to_json(const Partition& lambda) {
    Json out = Json::array();
    for (Int part : lambda.parts) out.push_back(part);
    return out;
}

Json kummer_audit_to_json(const KummerAudit& audit) {
    Json summands = Json::array();
    for (const KummerSummand& s : audit.summands)
        summands.push_back(Json{{"lambda", partition_to_json(s.lambda)},
                                {"copies", big_to_json(s.copies)},
                                {"power", s.power},
                                {"twist", s.twist}});
    return Json{{"summands", summands},
                {"inventory_rank", big_to_json(audit.inventory_rank)},
                {"betti_rank", big_to_json(audit.betti_rank)},
                {"consistent", audit.consistent}};
}

Json chow_to_json(const ChowReport& report) {
    Json rows = Json::array();
    for (const ChowRow& row : report.rows)
        rows.push_back(Json{{"codim", row.codim},
                            {"ch_rank", big_to_json(row.ch_rank)},
                            {"ab_dim", big_to_json(row.ab_dim)}});
    return Json{{"rows", rows}, {"tate_type", report.tate_type}};
}

Json moduli_to_json(const ModuliReport& report) {
    return Json{{"dim", report.dim},
                {"vperp_rank", report.vperp_rank},
                {"b2_target", report.b2_target},
                {"shioda_certified", report.shioda_certified}};
}

Json report_to_json(const ReportBundle& bundle) {
    Json lattice{{"branch", bundle.branch},
                 {"lattice", lattice_to_json(bundle.ns)},
                 {"validation", validation_to_json(bundle.ns_check)}};
    if (bundle.variant) lattice["variant"] = variant_to_string(*bundle.variant);

    Json elliptic = elliptic_to_json(bundle.elliptic);
    elliptic["verified"] = true;   // validate_elliptic_witness ran during assembly

    Json out{{"inputs",
              Json{{"p", bundle.p},
                   {"sigma", bundle.sigma},
                   {"kind", kind_to_string(bundle.kind)},
                   {"v", mukai_to_json(bundle.v)},
                   {"height_cap", bundle.height_cap}}},
             {"ns", std::move(lattice)},
             {"polarization", latvec_to_json(bundle.polarization)},
             {"generality",
              Json{{"twist", latvec_to_json(bundle.generality_twist)},
                   {"v_general", mukai_to_json(bundle.v_general)}}},
             {"elliptic", std::move(elliptic)},
             {"dim", bundle.dim},
             {"moduli", bundle.moduli ? moduli_to_json(*bundle.moduli) : Json(nullptr)},
             {"h2_slopes", bundle.h2_slopes ? slopes_to_json(*bundle.h2_slopes) : Json(nullptr)},
             {"h2_supersingular", bundle.h2_supersingular},
             {"motive",
              Json{{"canonical", motive_to_json(bundle.motive)},
                   {"betti", betti_to_json(bundle.betti)},
                   {"chow", chow_to_json(bundle.chow)}}}};
    return out;
}

namespace {

// Accepts a bare scalar or an array of scalars.
template <typename T, typename F>
std::vector<T> list_from(const Json& j, const char* what, F parse_one) {
    std::vector<T> out;
    if (j.is_array()) {
        for (const Json& item : j) out.push_back(parse_one(item));
    } else {
        out.push_back(parse_one(j));
    }
    if (out.empty()) bad(std::string(what) + " must not be empty");
    return out;
}

}  // namespace

BatchSpec batch_spec_from_json(const Json& j) {
    if (!j.is_object()) bad("grid spec must be a JSON object");
    BatchSpec spec;
    spec.ps = list_from<Int>(field(j, "p"), "p", [](const Json& x) { return int_from(x, "p"); });
    spec.sigmas = list_from<int>(field(j, "sigma"), "sigma", [](const Json& x) {
        return static_cast<int>(int_from(x, "sigma"));
    });
    if (j.contains("kind")) {
        spec.kinds = list_from<ModuliKind>(j.at("kind"), "kind", [](const Json& x) {
            return kind_from_string(string_from(x, "kind"));
        });
    } else {
        spec.kinds = {ModuliKind::k3};
    }
    if (j.contains("vectors_per_cell"))
        spec.vectors_per_cell = static_cast<int>(int_from(j.at("vectors_per_cell"), "vectors_per_cell"));
    if (j.contains("r_range")) {
        const Json& r = j.at("r_range");
        if (!r.is_array() || r.size() != 2) bad("r_range must be a [lo, hi] pair");
        spec.r_lo = int_from(r[0], "r_range lo");
        spec.r_hi = int_from(r[1], "r_range hi");
    }
    if (j.contains("seed")) {
        const Json& s = j.at("seed");
        if (!s.is_number_integer()) bad("seed must be a JSON integer");
        spec.seed = s.get<std::uint64_t>();
    }
    if (j.contains("height_cap")) spec.height_cap = int_from(j.at("height_cap"), "height_cap");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        static const char* known[] = {"p",       "sigma",  "kind",      "vectors_per_cell",
                                      "r_range", "seed",   "height_cap"};
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) bad("unknown grid key '" + key + "'");
    }
    return spec;
}

namespace {

std::string trimmed(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

Json toml_scalar(const std::string& raw, int lineno) {
    const std::string s = trimmed(raw);
    if (s.empty()) bad("empty value on line " + std::to_string(lineno));
    if (s.front() == '"') {
        if (s.size() < 2 || s.back() != '"')
            bad("unterminated string on line " + std::to_string(lineno));
        return Json(s.substr(1, s.size() - 2));
    }
    try {
        size_t used = 0;
        const long long n = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return Json(n);
    } catch (const std::exception&) {
        bad("cannot parse value '" + s + "' on line " + std::to_string(lineno));
    }
}

Json toml_value(const std::string& raw, int lineno) {
    const std::string s = trimmed(raw);
    if (s.empty() || s.front() != '[') return toml_scalar(s, lineno);
    if (s.back() != ']') bad("unterminated array on line " + std::to_string(lineno));
    Json arr = Json::array();
    std::string item;
    bool in_str = false;
    for (size_t i = 1; i + 1 < s.size(); ++i) {
        const char c = s[i];
        if (c == '"') in_str = !in_str;
        if (c == '[' && !in_str) bad("nested arrays are not supported (line " + std::to_string(lineno) + ")");
        if (c == ',' && !in_str) {
            arr.push_back(toml_scalar(item, lineno));
            item.clear();
        } else {
            item += c;
        }
    }
    if (!trimmed(item).empty()) arr.push_back(toml_scalar(item, lineno));
    return arr;
}

}  // namespace

Json toml_grid_to_json(const std::string& text) {
    Json out = Json::object();
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s;
        bool in_str = false;
        for (char c : line) {
            if (c == '"') in_str = !in_str;
            if (c == '#' && !in_str) break;
            s += c;
        }
        s = trimmed(s);
        if (s.empty()) continue;
        if (s.front() == '[')
            bad("tables are not supported in grid files (line " + std::to_string(lineno) + ")");
        const size_t eq = s.find('=');
        if (eq == std::string::npos)
            bad("expected 'key = value' on line " + std::to_string(lineno));
        const std::string key = trimmed(s.substr(0, eq));
        if (key.empty()) bad("empty key on line " + std::to_string(lineno));
        out[key] = toml_value(s.substr(eq + 1), lineno);
    }
    return out;
}

BatchSpec batch_spec_from_text(const std::string& text) {
    const size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        Json j = Json::parse(text, nullptr, false);
        if (j.is_discarded()) bad("grid file is not valid JSON");
        return batch_spec_from_json(j);
    }
    return batch_spec_from_json(toml_grid_to_json(text));
}

Json batch_to_json(const BatchResult& result) {
    Json cells = Json::array();
    for (const BatchCell& cell : result.cells) {
        Json c{{"p", cell.p},
               {"sigma", cell.sigma},
               {"kind", kind_to_string(cell.kind)},
               {"vectors", cell.vectors},
               {"pass", cell.pass},
               {"seconds", cell.seconds}};
        if (!cell.pass) c["error"] = cell.error;
        cells.push_back(std::move(c));
    }
    return Json{{"all_pass", result.all_pass}, {"cells", cells}};
}

}  // namespace ssv
