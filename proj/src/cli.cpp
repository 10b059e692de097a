#include "eulerpade/cli.hpp"

#include "eulerpade/certify.hpp"
#include "eulerpade/error.hpp"
#include "eulerpade/json_io.hpp"
#include "eulerpade/pade.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace eulerpade::cli {

namespace {

struct Options {
    std::string field;
    std::string m;
    std::string l = "1";
    std::string mu = "0";
    std::string alphas;
    std::string lambdas;
    std::string p;
    std::string pmin = "2";
    std::string pmax;
    std::string prec;
    std::string place;
    std::string P0;
    std::string P1;
    std::string nmax = "10000";
    std::string cutoff;
    std::string exclude;
    std::string lmax = "20";
    std::string a;
    std::string b = "1";
    std::string n;
    std::string r;
    std::string kappa;
    std::string c1;
    std::string check;
    double logH = 0;
    bool json = false;
};

long parse_integer(const std::string& flag, const std::string& text) {
    const Rational q = parse_rational(text);
    if (q.get_den() != 1) throw Error(ErrorCode::ParseError, "--" + flag + " must be an integer, got " + text);
    if (!q.get_num().fits_slong_p()) throw Error(ErrorCode::ParseError, "--" + flag + " is out of range");
    return q.get_num().get_si();
}

Integer parse_big_integer(const std::string& flag, const std::string& text) {
    const Rational q = parse_rational(text);
    if (q.get_den() != 1) throw Error(ErrorCode::ParseError, "--" + flag + " must be an integer, got " + text);
    return q.get_num();
}

std::string require(const std::string& flag, const std::string& value) {
    if (value.empty()) throw Error(ErrorCode::InvalidArgument, "--" + flag + " is required");
    return value;
}

QuadraticField field_of(const Options& o) {
    if (o.field.empty()) return QuadraticField();
    return QuadraticField(parse_integer("field", o.field));
}

std::vector<FieldElement> alphas_of(const Options& o, const QuadraticField& K) {
    return parse_element_list(K, require("alphas", o.alphas));
}

std::string join(const std::vector<FieldElement>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "; " : "") + to_string(xs[i]);
    return out;
}

Json alpha_strings(const std::vector<FieldElement>& xs) {
    Json out = Json::array();
    for (const auto& x : xs) out.push_back(to_string(x));
    return out;
}

std::string format_poly(const Polynomial& poly) {
    if (poly.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < poly.coeffs().size(); ++i) {
        const FieldElement& c = poly.coeffs()[i];
        if (c.is_zero()) continue;
        if (c.is_rational()) {
            const bool negative = sgn(c.x()) < 0;
            if (!out.empty()) out += negative ? " - " : " + ";
            else if (negative) out += "-";
            out += to_string(Rational(abs(c.x())));
        } else {
            if (!out.empty()) out += " + ";
            out += "(" + to_string(c) + ")";
        }
        if (i > 0) out += i == 1 ? "*t" : "*t^" + std::to_string(i);
    }
    return out;
}

std::string format_double(double x) {
    std::ostringstream s;
    s << std::setprecision(12) << x;
    return s.str();
}

Place select_place(const QuadraticField& K, long p, const std::string& name) {
    const auto places = places_above(K, p);
    if (name.empty()) return places.front();
    const Splitting s = parse_splitting(name);
    for (const Place& v : places) {
        if (v.splitting == s) return v;
    }
    throw Error(ErrorCode::InvalidArgument, "no " + name + " place above " + std::to_string(p));
}

int cmd_pade(const Options& o, std::ostream& out) {
    const QuadraticField K = field_of(o);
    const auto alpha = alphas_of(o, K);
    const int m = o.m.empty() ? static_cast<int>(alpha.size()) : static_cast<int>(parse_integer("m", o.m));
    const int l = static_cast<int>(parse_integer("l", o.l));
    const int mu = static_cast<int>(parse_integer("mu", o.mu));
    const PadeSystem sys = pade_construct(m, l, mu, alpha);
    const long bound = static_cast<long>(m + 1) * l + mu;
    const long cutoff = o.cutoff.empty() ? bound + 5 : parse_integer("cutoff", o.cutoff);
    const long order = pade_order_check(sys, cutoff);
    if (o.json) {
        Json polys = Json::array();
        for (const auto& B : sys.B) polys.push_back(to_json(B));
        out << Json{{"m", m}, {"l", l}, {"mu", mu}, {"alphas", alpha_strings(alpha)}, {"B", polys},
                    {"order", order}, {"order_bound", bound}, {"order_ok", order >= bound}}
                   .dump()
            << '\n';
        return kExitOk;
    }
    out << "m = " << m << ", l = " << l << ", mu = " << mu << ", alphas = " << join(alpha) << '\n';
    for (std::size_t i = 0; i < sys.B.size(); ++i) out << "B_" << i << "(t) = " << format_poly(sys.B[i]) << '\n';
    out << "remainder order " << order << " (bound " << bound << ", cutoff " << cutoff << ")\n";
    return kExitOk;
}

int cmd_eval(const Options& o, std::ostream& out) {
    const QuadraticField K = field_of(o);
    const long p = parse_integer("p", require("p", o.p));
    const long N = parse_integer("prec", require("prec", o.prec));
    const Place v = select_place(K, p, o.place);
    const FieldElement t = parse_element(K, require("alpha", o.alphas));
    CertifiedValue value = (o.P0.empty() && o.P1.empty())
                               ? euler_eval_certified(v, t, N)
                               : genfact_eval(v, parse_element(K, require("P0", o.P0)), parse_element(K, require("P1", o.P1)),
                                              t, N, parse_integer("nmax", o.nmax));
    if (o.json) {
        out << to_json(value).dump() << '\n';
        return kExitOk;
    }
    const CompletionElement& x = value.value;
    out << "place " << to_string(v.splitting) << " over " << p << ", N = " << N << '\n';
    if (x.ring().degree_two()) {
        const char* basis = x.ring().omega_basis() ? "omega" : "sqrt(d)";
        out << "residue " << x.u().get_str() << " + " << x.w().get_str() << "*" << basis << " mod " << p << '^' << N << '\n';
    } else {
        out << "residue " << x.u().get_str() << " mod " << p << '^' << N << '\n';
    }
    out << "tail valuation bound " << to_string(value.tail_valuation_bound) << ", terms used " << value.terms_used << '\n';
    return kExitOk;
}

int report_certificate(const Certificate& cert, bool json, std::ostream& out) {
    if (json) {
        out << to_json(cert).dump() << '\n';
    } else if (cert.status == CertificateStatus::nonzero) {
        out << "nonzero at the " << to_string(cert.place.splitting) << " place over " << cert.prime()
            << ": partial valuation " << to_string(cert.partial_valuation) << " < tail bound "
            << to_string(cert.tail_valuation_bound) << " (N = " << cert.precision << ")\n";
    } else {
        out << "undetermined: no place in range separated the linear form from zero (last tried "
            << to_string(cert.place.splitting) << " over " << cert.prime() << ", N = " << cert.precision << ")\n";
    }
    return cert.status == CertificateStatus::nonzero ? kExitOk : kExitUndetermined;
}

std::pair<long, long> prime_range(const Options& o) {
    if (!o.p.empty()) {
        const long p = parse_integer("p", o.p);
        return {p, p};
    }
    return {parse_integer("pmin", o.pmin), parse_integer("pmax", require("pmax", o.pmax))};
}

int cmd_certify(const Options& o, std::ostream& out) {
    if (!o.check.empty()) {
        std::ifstream in(o.check);
        if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + o.check);
        std::stringstream buffer;
        buffer << in.rdbuf();
        Json j;
        try {
            j = Json::parse(buffer.str());
        } catch (const Json::exception& e) {
            throw Error(ErrorCode::ParseError, e.what());
        }
        const Certificate cert = certificate_from_json(j);
        const bool ok = verify_certificate(cert);
        if (o.json)
            out << Json{{"valid", ok}, {"status", to_string(cert.status)}}.dump() << '\n';
        else
            out << (ok ? "valid " : "INVALID ") << to_string(cert.status) << " certificate\n";
        if (!ok) return kExitInputError;
        return cert.status == CertificateStatus::nonzero ? kExitOk : kExitUndetermined;
    }
    const QuadraticField K = field_of(o);
    const auto alpha = alphas_of(o, K);
    const auto lambda = parse_element_list(K, require("lambdas", o.lambdas));
    const auto [pmin, pmax] = prime_range(o);
    const long N_max = o.prec.empty() ? 64 : parse_integer("prec", o.prec);
    return report_certificate(certify_nonvanishing(K, lambda, alpha, pmin, pmax, N_max), o.json, out);
}

int cmd_bounds(const Options& o, std::ostream& out) {
    const int m = static_cast<int>(parse_integer("m", require("m", o.m)));
    double c1 = 0;
    int kappa = 1;
    if (!o.c1.empty()) {
        c1 = parse_rational(o.c1).get_d();
        kappa = static_cast<int>(parse_integer("kappa", o.kappa.empty() ? "1" : o.kappa));
    } else {
        const QuadraticField K = field_of(o);
        const auto alpha = alphas_of(o, K);
        if (static_cast<int>(alpha.size()) != m) throw Error(ErrorCode::InvalidArgument, "--m disagrees with --alphas");
        c1 = constants_c1_c2(K, alpha, ValuationSetDescriptor::all_places()).c1;
        kappa = o.kappa.empty() ? K.kappa() : static_cast<int>(parse_integer("kappa", o.kappa));
    }
    const BoundReport r = theorem2_bounds(m, kappa, c1, o.logH);
    if (o.json) {
        out << to_json(r).dump() << '\n';
        return kExitOk;
    }
    out << "s = " << format_double(r.s) << ", ell = " << r.ell << ", N(ell) = " << format_double(r.N_ell)
        << ", N(ell+1) = " << format_double(r.N_ell_plus_1) << '\n';
    out << "prime interval ]" << format_double(r.interval_lo) << ", " << format_double(r.interval_hi) << "[\n";
    out << "exponent " << format_double(r.exponent) << '\n';
    out << "[log(ell+1), m(ell+2)] inside interval: " << (r.containment ? "yes" : "no") << '\n';
    return kExitOk;
}

ValuationSetDescriptor parse_exclusions(const QuadraticField& K, const std::string& text) {
    if (text.empty()) return ValuationSetDescriptor::all_places();
    std::vector<Place> excluded;
    std::stringstream items(text);
    std::string item;
    while (std::getline(items, item, ',')) {
        const auto colon = item.find(':');
        const long p = parse_integer("exclude", item.substr(0, colon));
        if (colon == std::string::npos) {
            for (const Place& v : places_above(K, p)) excluded.push_back(v);
        } else {
            excluded.push_back(select_place(K, p, item.substr(colon + 1)));
        }
    }
    return ValuationSetDescriptor::cofinite(std::move(excluded));
}

int cmd_limsup(const Options& o, std::ostream& out) {
    const QuadraticField K = field_of(o);
    const auto alpha = alphas_of(o, K);
    const ValuationSetDescriptor V = parse_exclusions(K, o.exclude);
    const long L_max = parse_integer("lmax", o.lmax);
    const Constants c = constants_c1_c2(K, alpha, V);
    const LimsupReport report = limsup_sequence(K, alpha, V, L_max);
    if (o.json) {
        Json j{{"kind", "evidence"}, {"c1", c.c1}, {"c2", c.c2}, {"log_values", report.values}};
        j["decreasing_from"] = report.decreasing_from ? Json(*report.decreasing_from) : Json(nullptr);
        out << j.dump() << '\n';
        return kExitOk;
    }
    out << "evidence only (finite prefix): c1 = " << format_double(c.c1) << ", c2 = " << format_double(c.c2) << '\n';
    for (std::size_t i = 0; i < report.values.size(); ++i)
        out << "l = " << i + 1 << "  log a_l = " << format_double(report.values[i]) << '\n';
    if (report.decreasing_from)
        out << "strictly decreasing from l = " << *report.decreasing_from << " through " << L_max << '\n';
    else
        out << "not yet decreasing at l = " << L_max << '\n';
    return kExitOk;
}

int cmd_fib(const Options& o, std::ostream& out) {
    const Integer a = parse_big_integer("a", require("a", o.a));
    const Integer b = parse_big_integer("b", o.b);
    const LinearFormDemo demo = fibonacci_demo(a, b);
    const auto [pmin, pmax] = prime_range(o);
    const long N_max = o.prec.empty() ? 64 : parse_integer("prec", o.prec);
    if (!o.json) out << "sum n! f_n != " << a.get_str() << '/' << b.get_str() << "  via lambdas " << join(demo.lambdas) << '\n';
    return report_certificate(certify_nonvanishing(demo.field, demo.lambdas, demo.alphas, pmin, pmax, N_max), o.json, out);
}

int cmd_residue(const Options& o, std::ostream& out) {
    const long n = parse_integer("n", require("n", o.n));
    const long r = parse_integer("r", require("r", o.r));
    const int m = static_cast<int>(parse_integer("m", o.m.empty() ? "1" : o.m));
    const ResidueCondition rc = residue_condition(n, r, m);
    if (o.json) {
        out << Json{{"n", n}, {"r", r}, {"m", m}, {"phi", euler_phi(n)}, {"ok", rc.ok},
                    {"slope", to_string(rc.exact_slope)}}
                   .dump()
            << '\n';
        return kExitOk;
    }
    out << "phi(" << n << ") = " << euler_phi(n) << ", slope " << to_string(rc.exact_slope) << ", condition "
        << (rc.ok ? "holds" : "fails") << '\n';
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Padé approximations and p-adic certificates for Euler's factorial series", "eulerpade"};
    app.require_subcommand(1, 1);
    Options o;

    const auto add_field = [&](CLI::App* sub) { sub->add_option("--field", o.field, "radicand d of Q(sqrt d); omit for Q"); };
    const auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "emit JSON"); };
    const auto add_range = [&](CLI::App* sub) {
        sub->add_option("--p", o.p, "single prime");
        sub->add_option("--pmin", o.pmin, "smallest prime scanned");
        sub->add_option("--pmax", o.pmax, "largest prime scanned");
    };

    CLI::App* pade = app.add_subcommand("pade", "print B-polynomials and check the remainder order");
    add_field(pade);
    pade->add_option("--m", o.m, "number of alphas");
    pade->add_option("--l", o.l, "degree parameter l");
    pade->add_option("--mu", o.mu, "shift mu in 0..m");
    pade->add_option("--alphas", o.alphas, "alphas, e.g. 1;-1 or 1/2,1/2;1/2,-1/2")->required();
    pade->add_option("--cutoff", o.cutoff, "series truncation for the order check");
    add_json(pade);

    CLI::App* eval = app.add_subcommand("eval", "certified value of F_v(alpha) or of a generalised factorial series");
    add_field(eval);
    eval->add_option("--p", o.p, "prime")->required();
    eval->add_option("--place", o.place, "split_1, split_2, inert, ramified or rational");
    eval->add_option("--alpha,--alphas", o.alphas, "argument")->required();
    eval->add_option("--prec", o.prec, "precision N")->required();
    eval->add_option("--P0", o.P0, "constant term of P");
    eval->add_option("--P1", o.P1, "linear coefficient of P");
    eval->add_option("--nmax", o.nmax, "term limit for the generalised series");
    add_json(eval);

    CLI::App* certify = app.add_subcommand("certify", "search for a non-vanishing certificate");
    add_field(certify);
    certify->add_option("--alphas", o.alphas, "alphas");
    certify->add_option("--lambdas", o.lambdas, "lambda_0; ...; lambda_m");
    add_range(certify);
    certify->add_option("--prec", o.prec, "largest precision tried (default 64)");
    certify->add_option("--check", o.check, "re-verify a certificate JSON file instead of searching");
    add_json(certify);

    CLI::App* bounds = app.add_subcommand("bounds", "effective bounds for a given log H");
    add_field(bounds);
    bounds->add_option("--m", o.m, "number of alphas")->required();
    bounds->add_option("--kappa", o.kappa, "field degree");
    bounds->add_option("--c1", o.c1, "constant c1 (otherwise computed from --alphas)");
    bounds->add_option("--alphas", o.alphas, "alphas for computing c1");
    bounds->add_option("--logH", o.logH, "log of the height bound")->required();
    add_json(bounds);

    CLI::App* limsup = app.add_subcommand("limsup", "finite prefix of the limsup sequence (evidence, not proof)");
    add_field(limsup);
    limsup->add_option("--alphas", o.alphas, "alphas")->required();
    limsup->add_option("--exclude", o.exclude, "excluded places, e.g. 2,3:split_1");
    limsup->add_option("--lmax", o.lmax, "last l");
    add_json(limsup);

    CLI::App* fib = app.add_subcommand("fib", "certify sum n! f_n != a/b");
    fib->add_option("--a", o.a, "numerator")->required();
    fib->add_option("--b", o.b, "denominator");
    add_range(fib);
    fib->add_option("--prec", o.prec, "largest precision tried (default 64)");
    add_json(fib);

    CLI::App* residue = app.add_subcommand("residue", "residue-class condition r(m+1) > m phi(n)");
    residue->add_option("--n", o.n, "modulus")->required();
    residue->add_option("--r", o.r, "number of classes")->required();
    residue->add_option("--m", o.m, "number of alphas (default 1)");
    add_json(residue);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }

    try {
        const std::string name = app.get_subcommands().front()->get_name();
        if (name == "pade") return cmd_pade(o, out);
        if (name == "eval") return cmd_eval(o, out);
        if (name == "certify") return cmd_certify(o, out);
        if (name == "bounds") return cmd_bounds(o, out);
        if (name == "limsup") return cmd_limsup(o, out);
        if (name == "fib") return cmd_fib(o, out);
        return cmd_residue(o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
}

}  // namespace eulerpade::cli
