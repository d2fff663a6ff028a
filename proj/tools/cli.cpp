#include "cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "irrvir/gauge.hpp"
#include "irrvir/parse.hpp"
#include "irrvir/solver.hpp"

namespace irrvir::cli {
namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
    std::string command;
    std::string rank;
    std::optional<int> order;
    std::string central;
    std::string convention = "general";
    std::string format = "json";
    std::string output;
    std::string input;
    int bound = 0;
};

Convention convention_of(const std::string& s) {
    return s == "section2-display" ? Convention::Section2Display : Convention::General;
}

std::string cname(int k) { return "c" + std::to_string(k); }

// ------------------------------------------------------------------ encoding

class Encoder {
public:
    Encoder(VarTablePtr vars, bool text) : vars_(std::move(vars)), text_(text) {}

    Json header() const {
        Json h = Json::array();
        for (const auto& v : vars_->vars()) h.push_back({{"name", v.name}, {"weight", v.weight}});
        return h;
    }

    Json poly(const LaurentPoly& p) const {
        if (text_) return p.to_string();
        if (p.vars() && !p.vars()->same_layout(*vars_))
            throw Error(ErrorKind::VarTableMismatch, "polynomial is not over the report table");
        Json terms = Json::array();
        for (const auto& t : p.terms()) {
            Json e = Json::array();
            for (std::size_t i = 0; i < vars_->size(); ++i) e.push_back(t.mono[i]);
            terms.push_back({{"exponents", e}, {"num", t.coeff.get_num().get_str()}, {"den", t.coeff.get_den().get_str()}});
        }
        return terms;
    }

    Json polys(const std::vector<LaurentPoly>& ps, std::size_t from = 0) const {
        Json a = Json::array();
        for (std::size_t i = from; i < ps.size(); ++i) a.push_back(poly(ps[i]));
        return a;
    }

    Json vector(const ModuleVector& v) const {
        Json o = Json::object();
        for (const auto& [lam, c] : v.terms()) o[lam.to_string()] = poly(c);
        return o;
    }

    Json series(const TruncatedSeries& s) const {
        Json o{{"var", s.var()}, {"low", s.low()}};
        o["high"] = s.high() ? Json(*s.high()) : Json(nullptr);
        Json c = Json::array();
        for (int k = s.low(); k <= s.top(); ++k) c.push_back(poly(s.at(k)));
        o["coeffs"] = c;
        return o;
    }

    Json matrix(const PolyMatrix& m) const {
        Json a = Json::array();
        for (const auto& row : m) a.push_back(polys(row));
        return a;
    }

private:
    VarTablePtr vars_;
    bool text_;
};

Json residual(const ResidualEntry& e) {
    Json o{{"relation", e.relation}};
    o["window"] = e.window >= 0 ? Json(e.window) : Json(nullptr);
    o["status"] = e.zero ? "zero" : "nonzero";
    if (!e.detail.empty()) o["detail"] = e.detail;
    return o;
}

void add_residuals(Json& report, const std::vector<ResidualEntry>& entries) {
    for (const auto& e : entries) report["residuals"].push_back(residual(e));
}

ResidualEntry check(std::string relation, bool zero, std::string detail = "") {
    return ResidualEntry{std::move(relation), -1, zero, zero ? "" : std::move(detail)};
}

// ------------------------------------------------------------------ decoding

Error bad_input(const std::string& what) { return Error(ErrorKind::Parse, "input report: " + what); }

LaurentPoly decode_poly(const Json& j, const VarTablePtr& vars) {
    if (!j.is_array()) throw bad_input("polynomial must be a term list");
    std::vector<Term> terms;
    for (const auto& t : j) {
        const Json& e = t.at("exponents");
        if (!e.is_array() || e.size() != vars->size()) throw bad_input("exponent vector does not match the header");
        Term term;
        for (std::size_t i = 0; i < vars->size(); ++i) term.mono.set(i, e[i].get<int>());
        term.coeff = Rational(t.at("num").get<std::string>() + "/" + t.at("den").get<std::string>());
        term.coeff.canonicalize();
        terms.push_back(std::move(term));
    }
    return LaurentPoly::from_terms(vars, std::move(terms));
}

Partition decode_partition(const std::string& s) {
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw bad_input("bad partition key " + s);
    std::vector<int> parts;
    std::stringstream in(s.substr(1, s.size() - 2));
    std::string item;
    while (std::getline(in, item, ',')) parts.push_back(std::stoi(item));
    return Partition(parts);
}

ModuleVector decode_vector(const Json& j, const ContextPtr& ctx) {
    ModuleVector v(ctx);
    for (const auto& [key, val] : j.items()) v.add_term(decode_partition(key), decode_poly(val, ctx->vars()));
    return v;
}

void check_header(const Json& h, const VarTablePtr& vars) {
    if (!h.is_array() || h.size() != vars->size()) throw bad_input("variable header does not match the rank and order");
    for (std::size_t i = 0; i < vars->size(); ++i)
        if (h[i].at("name").get<std::string>() != vars->name(i) || h[i].at("weight").get<int>() != vars->weight(i))
            throw bad_input("variable header does not match the rank and order");
}

// ------------------------------------------------------------------ text output

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

bool flat(const Json& j) {
    if (!j.is_array()) return false;
    for (const auto& x : j)
        if (!is_scalar(x)) return false;
    return true;
}

bool flat_object(const Json& j) {
    if (!j.is_object() || j.empty()) return false;
    for (const auto& [key, val] : j.items())
        if (!is_scalar(val)) return false;
    return true;
}

std::string flat_object_text(const Json& j) {
    std::string s;
    for (const auto& [key, val] : j.items()) s += (s.empty() ? "" : ", ") + key + ": " + scalar_text(val);
    return s;
}

std::string flat_text(const Json& j) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + scalar_text(j[i]);
    return s + "]";
}

void render(const Json& j, std::ostream& os, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (j.is_object()) {
        for (const auto& [key, val] : j.items()) {
            os << pad << key << ":";
            if (is_scalar(val)) os << " " << scalar_text(val) << "\n";
            else if (flat(val)) os << " " << flat_text(val) << "\n";
            else if (val.empty()) os << " {}\n";
            else {
                os << "\n";
                render(val, os, indent + 2);
            }
        }
    } else if (j.is_array()) {
        for (const auto& x : j) {
            if (is_scalar(x)) os << pad << "- " << scalar_text(x) << "\n";
            else if (flat(x)) os << pad << "- " << flat_text(x) << "\n";
            else if (flat_object(x)) os << pad << "- " << flat_object_text(x) << "\n";
            else {
                os << pad << "-\n";
                render(x, os, indent + 2);
            }
        }
    } else {
        os << pad << scalar_text(j) << "\n";
    }
}

// ------------------------------------------------------------------ commands

struct Context {
    const RunConfig& cfg;
    bool text;
    Json& report;
};

Json meta(const Context& c, const std::string& rank, std::optional<int> K, const Encoder& enc, const LaurentPoly& central,
          const Json& header) {
    Json m{{"rank", rank}};
    m["K"] = K ? Json(*K) : Json(nullptr);
    m["convention"] = c.cfg.convention;
    m["central"] = enc.poly(central);
    m["variables"] = header;
    return m;
}

std::optional<LaurentPoly> central_override(const RunConfig& cfg, const VarTablePtr& vars) {
    if (cfg.central.empty()) return std::nullopt;
    return parse_poly(vars, cfg.central);
}

void require_general(const RunConfig& cfg, const std::string& what) {
    if (cfg.convention != "general")
        throw Error(ErrorKind::Usage, "--convention " + cfg.convention + " is not available for " + what);
}

int order_or(const RunConfig& cfg, int fallback) {
    int K = cfg.order.value_or(fallback);
    if (K < 0) throw Error(ErrorKind::Usage, "--order must be non-negative");
    return K;
}

// Rank 1 lives in the Verma module and has its own solver.
struct Rank1Run {
    VarTablePtr vars;
    LaurentPoly central;
    Rank1Series series;
};

VarTablePtr rank1_table() { return standard_table(1, 1); }

Json encode_rank1(const Rank1Series& s, const Encoder& enc) {
    Json tail = Json::array();
    for (int k = 0; k <= s.K(); ++k) {
        const auto kk = static_cast<std::size_t>(k);
        tail.push_back({{"k", k}, {"denominator", enc.poly(s.denom[kk])}, {"level_det", enc.poly(s.level_det[kk])},
                        {"terms", enc.vector(s.numer[kk])}});
    }
    return Json{{"nu", enc.poly(LaurentPoly(0))}, {"g", Json::array()}, {"alpha", enc.poly(s.alpha)},
                {"beta", enc.poly(s.beta)}, {"tail", tail}};
}

Rank1Run rank1_solve(const RunConfig& cfg, int K) {
    Rank1Run run;
    run.vars = rank1_table();
    run.central = central_override(cfg, run.vars).value_or(default_central(run.vars));
    auto lam = lambda_table(run.vars, 1, convention_of(cfg.convention));
    run.series = solve_rank1(run.vars, delta_of(run.vars, "c0"), run.central, lam[0], lam[1], K);
    return run;
}

Rank1Series rank1_decode(const Json& in, const VarTablePtr& vars, const LaurentPoly& central, Convention conv) {
    Rank1Series s;
    s.vars = vars;
    s.ctx = ModuleContext::verma(vars, delta_of(vars, "c0"), central);
    auto lam = lambda_table(vars, 1, conv);
    s.alpha = coeff(lam[0], "c1", 1);
    s.beta = coeff(lam[1], "c1", 2);
    int k = 0;
    for (const auto& e : in.at("series").at("tail")) {
        if (e.at("k").get<int>() != k++) throw bad_input("tail orders must be consecutive from 0");
        s.numer.push_back(decode_vector(e.at("terms"), s.ctx));
        s.level_det.push_back(decode_poly(e.at("level_det"), vars));
        s.denom.push_back(decode_poly(e.at("denominator"), vars));
    }
    if (s.numer.empty()) throw bad_input("empty tail");
    return s;
}

std::vector<ResidualEntry> rank1_checks(const Rank1Series& s) {
    auto entries = verify_rank1(s).entries;
    ResidualEntry e{"E_k = d_k E_{k-1}", s.K(), true, ""};
    if (s.denom[0] != LaurentPoly(1)) e.zero = false;
    for (int k = 1; k <= s.K(); ++k)
        if (s.denom[static_cast<std::size_t>(k)] != s.level_det[static_cast<std::size_t>(k)] * s.denom[static_cast<std::size_t>(k - 1)]) {
            e.zero = false;
            e.detail = "order " + std::to_string(k);
            break;
        }
    entries.push_back(e);
    return entries;
}

Json encode_series(const IrregularSeries& s, const Encoder& enc) {
    Json tail = Json::array();
    for (std::size_t k = 0; k < s.v.size(); ++k) tail.push_back({{"k", static_cast<int>(k)}, {"terms", enc.vector(s.v[k])}});
    Json unknowns = Json::array();
    for (const auto& u : s.ledger.entries) {
        Json o{{"name", u.name}, {"solved", u.solved}};
        o["order"] = u.order >= 0 ? Json(u.order) : Json(nullptr);
        if (u.solved) o["value"] = enc.poly(u.value);
        unknowns.push_back(o);
    }
    return Json{{"nu", enc.poly(s.nu)}, {"g", enc.polys(s.g, 1)}, {"tail", tail}, {"unknowns", unknowns},
                {"pending", s.ledger.pending()}};
}

IrregularSeries decode_series(const Json& in, const RankSpec& rank, int K, const LaurentPoly& central, const VarTablePtr& vars) {
    IrregularSeries s;
    s.setup = make_setup(rank, K, central, vars);
    const Json& j = in.at("series");
    s.nu = decode_poly(j.at("nu"), vars);
    s.g.assign(1, LaurentPoly(0));
    for (const auto& g : j.at("g")) s.g.push_back(decode_poly(g, vars));
    if (static_cast<int>(s.g.size()) != rank.r) throw bad_input("expected " + std::to_string(rank.r - 1) + " entries in g");
    int k = 0;
    for (const auto& e : j.at("tail")) {
        if (e.at("k").get<int>() != k++) throw bad_input("tail orders must be consecutive from 0");
        s.v.push_back(decode_vector(e.at("terms"), s.setup.ctx));
    }
    if (static_cast<int>(s.v.size()) != K + 1) throw bad_input("tail length does not match K");
    return s;
}

IrregularSeries tower_solve(const RunConfig& cfg, const RankSpec& rank, int K) {
    require_general(cfg, "ranks above 1");
    VarTablePtr vars = tower_table(rank, K);
    return solve_tower(make_setup(rank, K, central_override(cfg, vars), vars));
}

void cmd_construct(const Context& c) {
    RankSpec rank = RankSpec::parse(c.cfg.rank);
    const int K = order_or(c.cfg, 4);
    if (rank.kind == RankKind::Integer && rank.r == 1) {
        Rank1Run run = rank1_solve(c.cfg, K);
        Encoder enc(run.vars, c.text);
        c.report["meta"] = meta(c, rank.to_string(), K, enc, run.central, enc.header());
        c.report["series"] = encode_rank1(run.series, enc);
        return;
    }
    IrregularSeries s = tower_solve(c.cfg, rank, K);
    Encoder enc(s.vars(), c.text);
    c.report["meta"] = meta(c, rank.to_string(), K, enc, s.setup.central, enc.header());
    c.report["series"] = encode_series(s, enc);
    std::vector<ResidualEntry> solver;
    const std::string z = rank.kind == RankKind::Integer ? "Z_" : "Y_";
    for (std::size_t k = 0; k < s.residual_zero.size(); ++k)
        solver.push_back(ResidualEntry{z + std::to_string(k) + " = 0 (solver)", static_cast<int>(k), s.residual_zero[k], ""});
    add_residuals(c.report, solver);
}

void cmd_verify(const Context& c) {
    if (!c.cfg.input.empty()) {
        std::ifstream f(c.cfg.input);
        if (!f) throw Error(ErrorKind::Usage, "cannot open " + c.cfg.input);
        Json in;
        try {
            in = Json::parse(f);
        } catch (const nlohmann::json::exception& e) {
            throw bad_input(e.what());
        }
        try {
            const Json& m = in.at("meta");
            RankSpec rank = RankSpec::parse(m.at("rank").get<std::string>());
            if (!c.cfg.rank.empty() && RankSpec::parse(c.cfg.rank).to_string() != rank.to_string())
                throw Error(ErrorKind::Usage, "--rank disagrees with the input report");
            const int K = m.at("K").get<int>();
            const std::string conv = m.at("convention").get<std::string>();
            if (conv != "general" && conv != "section2-display") throw bad_input("unknown convention " + conv);
            VarTablePtr vars = rank.r == 1 && rank.kind == RankKind::Integer ? rank1_table() : tower_table(rank, K);
            check_header(m.at("variables"), vars);
            LaurentPoly central = decode_poly(m.at("central"), vars);
            Encoder enc(vars, c.text);
            RunConfig echo = c.cfg;
            echo.convention = conv;
            c.report["meta"] = meta(Context{echo, c.text, c.report}, rank.to_string(), K, enc, central, enc.header());
            c.report["meta"]["input"] = c.cfg.input;
            if (rank.kind == RankKind::Integer && rank.r == 1) {
                add_residuals(c.report, rank1_checks(rank1_decode(in, vars, central, convention_of(conv))));
                return;
            }
            if (conv != "general") throw bad_input("ranks above 1 use the general convention");
            add_residuals(c.report, verify_canonical(decode_series(in, rank, K, central, vars)).entries);
        } catch (const nlohmann::json::exception& e) {
            throw bad_input(e.what());
        }
        return;
    }
    RankSpec rank = RankSpec::parse(c.cfg.rank);
    const int K = order_or(c.cfg, 4);
    if (rank.kind == RankKind::Integer && rank.r == 1) {
        Rank1Run run = rank1_solve(c.cfg, K);
        Encoder enc(run.vars, c.text);
        c.report["meta"] = meta(c, rank.to_string(), K, enc, run.central, enc.header());
        add_residuals(c.report, rank1_checks(run.series));
        return;
    }
    IrregularSeries s = tower_solve(c.cfg, rank, K);
    Encoder enc(s.vars(), c.text);
    c.report["meta"] = meta(c, rank.to_string(), K, enc, s.setup.central, enc.header());
    add_residuals(c.report, verify_canonical(s).entries);
}

Json encode_fields(const VectorFieldSet& fs, const Encoder& enc) {
    Json a = Json::array();
    for (std::size_t n = 0; n < fs.fields.size(); ++n) {
        Json comps = Json::object();
        for (const auto& coord : fs.coords) {
            LaurentPoly p = fs.fields[n].component(coord);
            if (!p.is_zero()) comps[coord] = enc.poly(p);
        }
        a.push_back({{"index", static_cast<int>(n)}, {"components", comps}});
    }
    return a;
}

// [X_m, X_n] = (n - m) X_{m+n}, with X_{m+n} = 0 once m + n reaches r.
ResidualEntry bracket_table(const VectorFieldSet& fs, const std::string& name) {
    const int r = fs.r;
    for (int m = 0; m < r; ++m)
        for (int n = m + 1; n < r; ++n) {
            VectorField expect;
            if (m + n < r) expect = LaurentPoly(n - m) * fs.fields[static_cast<std::size_t>(m + n)];
            if (!(bracket(fs.fields[static_cast<std::size_t>(m)], fs.fields[static_cast<std::size_t>(n)]) == expect))
                return check(name, false, "pair (" + std::to_string(m) + "," + std::to_string(n) + ")");
        }
    return check(name, true);
}

void cmd_frames(const Context& c) {
    RankSpec rank = RankSpec::parse(c.cfg.rank);
    const int r = rank.r;
    if (r < 2) throw Error(ErrorKind::Usage, "frames need rank at least 2 or 3/2");
    VarTablePtr vars = standard_table(r, 2 * r - 1);
    Encoder enc(vars, c.text);
    const bool integer = rank.kind == RankKind::Integer;
    FrameMatrix f = integer ? build_frame_integer(vars, r) : build_frame_half(vars, r);
    VectorFieldSet fields = integer ? integer_fields(vars, r) : build_half_fields(vars, r);
    CanonicalOperator lstar = integer ? build_lstar_integer(vars, r) : build_lstar_half(vars, r);

    LaurentPoly closed;
    if (integer) {
        Rational fact(1);
        for (int k = 2; k <= r; ++k) fact *= k;
        if ((r * (r - 1) / 2) % 2) fact = -fact;
        closed = LaurentPoly::variable(vars, cname(r), r) * fact;
    } else {
        closed = LaurentPoly::variable(vars, "Lambda", r) * LaurentPoly::variable(vars, cname(r - 1), -(r - 1)) * half_kappa(r);
    }

    c.report["meta"] = meta(c, rank.to_string(), std::nullopt, enc, default_central(vars), enc.header());
    Json fr{{"kind", integer ? "integer" : "half"}, {"coords", fields.coords}};
    fr["matrix"] = enc.matrix(f.m);
    fr["det"] = enc.poly(f.det);
    fr["det_closed_form"] = enc.poly(closed);
    fr["inverse_last_row"] = enc.polys(f.inverse.back());
    fr["lstar"] = Json{{"expansion_var", lstar.expansion_var}, {"basis", lstar.d_basis ? "D" : "L"},
                       {"full", enc.polys(lstar.full)}, {"coeff", enc.matrix(lstar.coeff)}};
    fr["fields"] = encode_fields(fields, enc);

    std::vector<ResidualEntry> checks;
    checks.push_back(check("det = closed form", f.det == closed, f.det.to_string()));
    {
        PolyMatrix row{f.inverse.back()};
        PolyMatrix prod = multiply(row, f.m);
        bool ok = true;
        for (int j = 0; j < r; ++j) ok = ok && prod[0][static_cast<std::size_t>(j)] == LaurentPoly(j == r - 1 ? 1 : 0);
        checks.push_back(check("(row r of M^-1) M = e_r", ok, "row product differs"));
    }
    if (integer) {
        bool ok = true;
        for (int m = 0; m + 1 < r; ++m) ok = ok && lstar.coeff[0][static_cast<std::size_t>(m)].is_zero();
        Rational s((r - 1) % 2 ? -1 : 1, r);
        s.canonicalize();
        LaurentPoly expect = LaurentPoly::variable(vars, cname(r - 1), r - 1) * s;
        ok = ok && lstar.coeff[0][static_cast<std::size_t>(r - 1)] == expect;
        checks.push_back(check("f_0 = ((-1)^(r-1)/r) c_{r-1}^{r-1} D_{r-1}", ok, lstar.coeff[0][static_cast<std::size_t>(r - 1)].to_string()));
        checks.push_back(bracket_table(fields, "[D_m, D_n] = (n-m) D_{m+n}"));
    } else {
        try {
            Rational rho = leading_half_ratio(lstar, vars);
            fr["rho"] = to_string(rho);
            checks.push_back(check("f_0 = rho_r c_{r-1}^{2r-2} L_{r-1}", rho != 0, "rho vanishes"));
        } catch (const Error& e) {
            checks.push_back(check("f_0 = rho_r c_{r-1}^{2r-2} L_{r-1}", false, e.what()));
        }
        Json scal = Json::array();
        for (int m = r; m <= 2 * r - 1; ++m) scal.push_back({{"m", m}, {"value", enc.poly(half_scalar(vars, r, m))}});
        fr["scalars"] = scal;
        ResidualEntry vs = check("V_n(S_m) = (m-n) S_{m+n}", true);
        for (int n = 0; n < r && vs.zero; ++n)
            for (int m = r; m <= 2 * r - 1; ++m)
                if (fields.fields[static_cast<std::size_t>(n)](half_scalar(vars, r, m)) !=
                    LaurentPoly(m - n) * half_scalar(vars, r, m + n)) {
                    vs = check(vs.relation, false, "(n,m) = (" + std::to_string(n) + "," + std::to_string(m) + ")");
                    break;
                }
        checks.push_back(vs);
        checks.push_back(bracket_table(fields, "[V_m, V_n] = (n-m) V_{m+n}"));
    }
    c.report["frames"] = fr;
    add_residuals(c.report, checks);
}

void cmd_gram(const Context& c) {
    int rho = 0;
    if (c.cfg.rank != "0") {
        RankSpec rank = RankSpec::parse(c.cfg.rank);
        if (rank.kind != RankKind::Integer) throw Error(ErrorKind::Usage, "gram takes an integer module rank");
        rho = rank.r;
    }
    const int K = order_or(c.cfg, 3);
    VarTablePtr vars = standard_table(std::max(rho, 1), std::max(2 * rho, 1));
    Encoder enc(vars, c.text);
    LaurentPoly central = central_override(c.cfg, vars).value_or(default_central(vars));
    ContextPtr ctx;
    Json eig = Json::array();
    if (rho == 0) {
        ctx = ModuleContext::verma(vars, LaurentPoly::variable(vars, "Delta"), central);
    } else {
        auto lam = lambda_table(vars, rho, convention_of(c.cfg.convention));
        std::vector<LaurentPoly> eigen(lam.begin() + (rho - 1), lam.end());
        ctx = ModuleContext::irregular(vars, rho, eigen, central);
    }
    for (int n = rho; n <= 2 * rho; ++n) eig.push_back({{"n", n}, {"value", enc.poly(ctx->eigenvalue(n))}});
    c.report["meta"] = meta(c, std::to_string(rho), K, enc, central, enc.header());

    Json blocks = Json::array();
    for (int n = 0; n <= K; ++n) {
        GramBlock b = gram_matrix(ctx, n, n);
        Json index = Json::array();
        for (const auto& p : b.index) index.push_back(p.to_string());
        blocks.push_back({{"level", n}, {"index", index}, {"entries", enc.matrix(b.entries)}});
    }
    Json dets = Json::array();
    std::vector<ResidualEntry> checks;
    for (int lo = 0; lo <= K; ++lo)
        for (int hi = lo; hi <= K; ++hi) {
            GramDetReport d = gram_det_report(ctx, lo, hi);
            Json o{{"lo", lo}, {"hi", hi}, {"det", enc.poly(d.det)}, {"expected", enc.poly(d.expected)},
                   {"expected_exponent", d.expected_exponent}, {"proportional", d.proportional}, {"ratio", to_string(d.ratio)}};
            o["observed_exponent"] = d.observed_exponent ? Json(*d.observed_exponent) : Json(nullptr);
            o["observed_ratio"] = to_string(d.observed_ratio);
            dets.push_back(o);
            std::string detail;
            if (d.observed_exponent)
                detail = "det = " + to_string(d.observed_ratio) + " * eigenvalue^" + std::to_string(*d.observed_exponent);
            else
                detail = "det is not a monomial in the top eigenvalue";
            checks.push_back(check("det G[" + std::to_string(lo) + ".." + std::to_string(hi) + "] = q * eigenvalue(" +
                                       std::to_string(2 * rho) + ")^" + std::to_string(d.expected_exponent),
                                   d.proportional, detail));
        }
    c.report["gram"] = Json{{"rho", rho}, {"eigenvalues", eig}, {"blocks", blocks}, {"determinants", dets}};
    add_residuals(c.report, checks);
}

void cmd_gauge(const Context& c) {
    RankSpec rank = RankSpec::parse(c.cfg.rank);
    if (rank.r < 2) throw Error(ErrorKind::Usage, "gauge needs rank at least 2 or 3/2");
    const int K = order_or(c.cfg, 4);
    IrregularSeries s = tower_solve(c.cfg, rank, K);
    Encoder enc(s.vars(), c.text);
    c.report["meta"] = meta(c, rank.to_string(), K, enc, s.setup.central, enc.header());
    add_residuals(c.report, verify_canonical(s).entries);
    Json& g = c.report["gauge"];

    std::optional<ScalarCompletion> comp;
    if (rank.kind == RankKind::Half) {
        const int bound = c.cfg.bound > 0 ? c.cfg.bound : 2 * rank.r;
        comp = scalar_completion_search(s.vars(), rank.r, bound);
        g["bound"] = comp->bound;
        g["sigma"] = enc.polys(comp->sigma);
        g["gauge_certificate"] = enc.poly(comp->gauge_certificate);
        add_residuals(c.report, comp->checks);
    }
    ObstructionSet obs = obstructions(s, comp);
    g["theta"] = enc.series(obs.theta);
    Json a = Json::array();
    for (const auto& x : obs.a) a.push_back(enc.series(x));
    g["a"] = a;
    g["pending"] = obs.pending;
    add_residuals(c.report, obs.checks);
    add_residuals(c.report, frobenius_verify(obs).entries);

    PotentialDecomposition d = integrate_potential(obs, frame_for(rank, s.vars()));
    g["g0"] = enc.poly(d.g0);
    g["nu"] = enc.polys(d.nu, 1);
    g["passive"] = d.passive;
    g["window"] = d.window;
    add_residuals(c.report, apply_gauge_and_verify(s, obs, d).entries);
}

bool residuals_zero(const Json& report) {
    if (!report.contains("residuals")) return true;
    for (const auto& e : report["residuals"])
        if (e["status"] != "zero") return false;
    return true;
}

void emit(const Json& report, const RunConfig& cfg, std::ostream& out) {
    std::ostringstream os;
    if (cfg.format == "text") render(report, os, 0);
    else os << report.dump(2) << "\n";
    if (cfg.output.empty()) {
        out << os.str();
        return;
    }
    std::ofstream f(cfg.output, std::ios::binary);
    f << os.str();
    if (!f) throw Error(ErrorKind::Usage, "cannot write " + cfg.output);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Irregular Virasoro vectors: construction and verification"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub, bool rank_required, bool with_order) {
        auto* opt = sub->add_option("--rank", cfg.rank, "integer rank r, or a half rank such as 5/2");
        if (rank_required) opt->required();
        if (with_order) sub->add_option("--order", cfg.order, "truncation order K");
        sub->add_option("--central", cfg.central, "central charge expression (default 1 + 6*Q^2)");
        sub->add_option("--convention", cfg.convention, "eigenvalue convention")
            ->check(CLI::IsMember({"general", "section2-display"}));
        sub->add_option("--format", cfg.format, "report format")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--output", cfg.output, "write the report to this file");
        sub->add_option("--bound", cfg.bound, "largest denominator bound for the scalar completion")
            ->check(CLI::PositiveNumber);
    };
    common(app.add_subcommand("construct", "solve for the canonical series"), true, true);
    auto* verify = app.add_subcommand("verify", "re-check every defining relation");
    common(verify, false, true);
    verify->add_option("--input", cfg.input, "JSON report written by construct");
    common(app.add_subcommand("frames", "frame matrices, determinants, L* tables and vector fields"), true, false);
    common(app.add_subcommand("gram", "Gram blocks and determinant records"), true, true);
    common(app.add_subcommand("gauge", "obstructions, potential and gauged residuals"), true, true);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    if (cfg.command == "verify" && cfg.input.empty() && cfg.rank.empty()) {
        err << "verify: --rank or --input is required\n";
        return 2;
    }

    Json report = Json::object();
    Context c{cfg, cfg.format == "text", report};
    int status = 0;
    try {
        if (cfg.command == "construct") cmd_construct(c);
        else if (cfg.command == "verify") cmd_verify(c);
        else if (cfg.command == "frames") cmd_frames(c);
        else if (cfg.command == "gram") cmd_gram(c);
        else cmd_gauge(c);
        if (!residuals_zero(report)) status = 1;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Usage || e.kind() == ErrorKind::Parse) {
            err << cfg.command << ": " << e.what() << "\n";
            return 2;
        }
        report["error"] = Json{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
        status = 1;
    } catch (const std::exception& e) {
        report["error"] = Json{{"kind", "InternalConsistency"}, {"message", e.what()}};
        status = 1;
    }
    try {
        emit(report, cfg, out);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 2;
    }
    return status;
}

}  // namespace irrvir::cli
