#include <ifib/ifib.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace ifib;
using json = nlohmann::json;

namespace {

enum class Format { text, json, csv };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json rat_json(const Rat& q) { return json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

json ball_json(const AppReal& x, int digits)
{
    return json{{"value", x.mid_str(digits)}, {"err_exp", x.err_exponent()}};
}

// all output goes through one table so text/json/csv stay in step
struct Out {
    json doc = json::object();
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> lines;

    void emit(Format f, std::ostream& os) const
    {
        switch (f) {
        case Format::json:
            os << doc.dump(2) << "\n";
            break;
        case Format::csv:
            for (std::size_t c = 0; c < header.size(); ++c)
                os << (c ? "," : "") << header[c];
            os << "\n";
            for (const auto& r : rows) {
                for (std::size_t c = 0; c < r.size(); ++c)
                    os << (c ? "," : "") << r[c];
                os << "\n";
            }
            break;
        case Format::text:
            for (const auto& l : lines)
                os << l << "\n";
            break;
        }
    }
};

mpfr_prec_t default_precision()
{
    const char* env = std::getenv("IFIB_PRECISION_BITS");
    if (!env)
        return 128;
    try {
        std::size_t used = 0;
        long v = std::stol(env, &used);
        if (used == std::string(env).size() && v >= 32 && v <= 65536)
            return static_cast<mpfr_prec_t>(v);
    } catch (const std::exception&) {
    }
    throw UsageError("IFIB_PRECISION_BITS must be an integer in [32, 65536]");
}

Out do_seq(long m, long j, long from, long to, const std::string& fam)
{
    if (m < 1 || j < 1 || j > m)
        throw UsageError("need m >= 1 and 1 <= j <= m");
    if (from > to || to - from > 10000)
        throw UsageError("need from <= to and at most 10001 terms");
    SeqFam f;
    if (fam == "F")
        f = SeqFam::F;
    else if (fam == "G")
        f = SeqFam::G;
    else if (fam == "N")
        f = SeqFam::N_of_F;
    else
        throw UsageError("family must be F, G or N");
    Out o;
    o.doc["m"] = m;
    o.doc["j"] = j;
    o.doc["family"] = fam;
    o.doc["terms"] = json::array();
    o.header = {"r", "num", "den"};
    for (long r = from; r <= to; ++r) {
        Rat v = seq_term({f, m, j}, r);
        o.doc["terms"].push_back(json{{"r", r}, {"value", rat_json(v)}});
        o.rows.push_back({std::to_string(r), v.get_num().get_str(), v.get_den().get_str()});
        o.lines.push_back(std::to_string(r) + " " + to_string(v));
    }
    return o;
}

Out do_table(const std::string& which, long only_m)
{
    bool pos = which == "pos";
    if (!pos && which != "neg")
        throw UsageError("appendix must be pos or neg");
    if (only_m != 0 && (only_m < 1 || only_m > 5))
        throw UsageError("table m must be in 1..5");
    long lo = pos ? 1 : -8, hi = pos ? 10 : 1;
    Out o;
    o.doc["appendix"] = which;
    o.doc["rows"] = json::array();
    o.header = {"m", "j"};
    for (long r = lo; r <= hi; ++r)
        o.header.push_back("r" + std::to_string(r));
    for (long m = 1; m <= 5; ++m) {
        if (only_m != 0 && m != only_m)
            continue;
        if (only_m == 0)
            o.lines.push_back("# m=" + std::to_string(m));
        for (long j = 1; j <= m; ++j) {
            std::vector<std::string> vals;
            for (long r = lo; r <= hi; ++r)
                vals.push_back(numerator({SeqFam::F, m, j}, r).get_str());
            std::string line;
            for (const auto& v : vals)
                line += (line.empty() ? "" : " ") + v;
            o.lines.push_back(line);
            std::vector<std::string> row{std::to_string(m), std::to_string(j)};
            row.insert(row.end(), vals.begin(), vals.end());
            o.rows.push_back(row);
            o.doc["rows"].push_back(json{{"m", m}, {"j", j}, {"values", vals}});
        }
    }
    return o;
}

Out do_convergents(long m, long r, int digits, mpfr_prec_t prec)
{
    if (m < 1)
        throw UsageError("need m >= 1");
    if (digits < 1 || digits > 1000)
        throw UsageError("digits must be in 1..1000");
    auto psi = try_psi_vector(m, r);
    if (!psi)
        throw UsageError("zero denominator at this r");
    mpfr_prec_t w = std::max<mpfr_prec_t>(prec, static_cast<mpfr_prec_t>(digits * 3.33 + 32));
    LimitVector phi = phi_vector(m, w);
    AppReal dist = euclid_error(m, r, w);
    Out o;
    o.doc["m"] = m;
    o.doc["r"] = r;
    o.doc["psi"] = json::array();
    o.doc["phi"] = json::array();
    o.header = {"u", "psi_num", "psi_den", "phi"};
    for (long u = 0; u < m; ++u) {
        const Rat& p = psi->components[static_cast<std::size_t>(u)];
        const AppReal& f = phi.components[static_cast<std::size_t>(u)];
        o.doc["psi"].push_back(rat_json(p));
        o.doc["phi"].push_back(ball_json(f, digits));
        o.rows.push_back({std::to_string(u + 1), p.get_num().get_str(), p.get_den().get_str(), f.mid_str(digits)});
        o.lines.push_back("psi[" + std::to_string(u + 1) + "] = " + to_string(p));
    }
    for (long u = 0; u < m; ++u)
        o.lines.push_back("phi[" + std::to_string(u + 1) + "] = " + phi.components[static_cast<std::size_t>(u)].mid_str(digits));
    o.doc["distance"] = ball_json(dist, digits);
    o.lines.push_back("distance = " + dist.mid_str(digits) + " +/- " + dist.rad_str());
    return o;
}

Out do_polys(const std::string& fam_s, long n)
{
    auto f = parse_fam(fam_s);
    if (!f)
        throw UsageError("unknown family " + fam_s);
    const UniPoly* p = nullptr;
    try {
        p = &family_poly({*f, n});
    } catch (const std::out_of_range& e) {
        throw UsageError(e.what());
    }
    Out o;
    o.doc["family"] = fam_s;
    o.doc["index"] = n;
    o.doc["coefficients"] = json::array();
    o.header = {"k", "num", "den"};
    for (long k = 0; k <= p->degree(); ++k) {
        Rat c = p->coeff(static_cast<std::size_t>(k));
        o.doc["coefficients"].push_back(rat_json(c));
        o.rows.push_back({std::to_string(k), c.get_num().get_str(), c.get_den().get_str()});
    }
    o.lines.push_back(fam_s + "_" + std::to_string(n) + "(x) = " + to_string(*p));
    return o;
}

Out do_fleck(long N, long a, long n)
{
    if (N < 0 || n < 1)
        throw UsageError("need N >= 0 and mod >= 1");
    Integer v = fleck({N, a, n});
    Out o;
    o.doc = json{{"N", N}, {"a", a}, {"mod", n}, {"value", v.get_str()}};
    o.header = {"N", "a", "mod", "value"};
    o.rows.push_back({std::to_string(N), std::to_string(a), std::to_string(n), v.get_str()});
    o.lines.push_back(v.get_str());
    return o;
}

Out do_mellin(const std::string& fam_s, long m)
{
    if (fam_s != "P" && fam_s != "Q")
        throw UsageError("family must be P or Q");
    if (m < 0 || m > 64)
        throw UsageError("m must be in 0..64");
    OrthoFam f = fam_s == "P" ? OrthoFam::P : OrthoFam::Q;
    MellinPoly mp = mellin_poly(f, m, m <= 10);
    Out o;
    o.doc["family"] = fam_s;
    o.doc["m"] = m;
    o.doc["normalization"] = rat_json(mp.normalization);
    o.doc["functional_sign"] = functional_sign(mp.poly);
    o.doc["coefficients"] = json::array();
    o.header = {"k", "num", "den"};
    for (long k = 0; k <= mp.poly.degree(); ++k) {
        Rat c = mp.poly.coeff(static_cast<std::size_t>(k));
        o.doc["coefficients"].push_back(rat_json(c));
        o.rows.push_back({std::to_string(k), c.get_num().get_str(), c.get_den().get_str()});
    }
    o.lines.push_back(std::string(fam_s == "P" ? "p" : "q") + "_" + std::to_string(m) + "(s) = " + to_string(mp.poly, "s"));
    o.lines.push_back("normalization = " + to_string(mp.normalization));
    o.lines.push_back("functional sign = " + std::to_string(functional_sign(mp.poly)));
    return o;
}

Out do_minors(long m, long i, const std::string& fam_s, long from, long count)
{
    if (m < 1 || m > 6 || i < 1 || i > m)
        throw UsageError("need 1 <= i <= m <= 6");
    if (fam_s != "F" && fam_s != "G")
        throw UsageError("family must be F or G");
    long bound = binom(m, i).get_si();
    if (count == 0)
        count = 2 * bound + 6;
    if (count < 1 || count > 2000)
        throw UsageError("count must be in 1..2000");
    SeqFam f = fam_s == "F" ? SeqFam::F : SeqFam::G;
    MinorSeq s = minor_seq(m, i, f, from, count);
    Out o;
    o.doc["m"] = m;
    o.doc["i"] = i;
    o.doc["family"] = fam_s;
    o.doc["start"] = from;
    o.doc["values"] = json::array();
    o.header = {"l", "num", "den"};
    for (std::size_t a = 0; a < s.values.size(); ++a) {
        const Rat& v = s.values[a];
        o.doc["values"].push_back(rat_json(v));
        o.rows.push_back({std::to_string(from + static_cast<long>(a)), v.get_num().get_str(), v.get_den().get_str()});
        o.lines.push_back(std::to_string(from + static_cast<long>(a)) + " " + to_string(v));
    }
    std::optional<UniPoly> ch;
    if (static_cast<long>(s.values.size()) >= 2 * bound + 4)
        ch = try_fit_recurrence(s.values, bound);
    if (ch) {
        json rec = json::array();
        std::string line = "recurrence:";
        for (const Rat& c : recurrence_list(*ch)) {
            rec.push_back(rat_json(c));
            line += " " + to_string(c);
        }
        o.doc["recurrence"] = rec;
        o.lines.push_back(line);
    } else {
        o.doc["recurrence"] = nullptr;
        o.lines.push_back("recurrence: window too short or no fit within order " + std::to_string(bound));
    }
    return o;
}

int do_verify(const std::string& suite, long max, bool verbose, Format fmt, mpfr_prec_t prec)
{
    if (suite != "all" && std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
        throw UsageError("unknown suite " + suite);
    if (max < 1 || max > 64)
        throw UsageError("max must be in 1..64");
    std::size_t npass = 0, nfail = 0, nnote = 0;
    const Check* first = nullptr;
    std::string first_suite;
    json reports = json::array();
    auto stream = [&](const Report& r) {
        std::size_t p = r.count(Status::pass), f = r.count(Status::fail), n = r.count(Status::finding);
        if (fmt == Format::text) {
            std::cout << (f ? "FAIL " : "pass ") << r.name << "  pass=" << p << " fail=" << f << " note=" << n << "\n";
            for (const auto& c : r.checks)
                if (verbose || c.status != Status::pass)
                    std::cout << "  " << status_name(c.status) << " " << c.tag << (c.detail.empty() ? "" : ": ") << c.detail
                              << "\n";
            std::cout.flush();
        } else if (fmt == Format::csv) {
            for (const auto& c : r.checks)
                if (verbose || c.status != Status::pass)
                    std::cout << r.name << "," << status_name(c.status) << "," << c.tag << ",\"" << c.detail << "\"\n";
        }
        json jr{{"name", r.name}, {"pass", p}, {"fail", f}, {"note", n}, {"checks", json::array()}};
        for (const auto& c : r.checks)
            if (verbose || c.status != Status::pass)
                jr["checks"].push_back(json{{"tag", c.tag}, {"status", status_name(c.status)}, {"detail", c.detail}});
        reports.push_back(jr);
        npass += p;
        nfail += f;
        nnote += n;
    };
    if (fmt == Format::csv)
        std::cout << "report,status,tag,detail\n";
    std::vector<Report> all = run_suite(suite, max, prec, stream);
    for (const auto& r : all)
        if (!first && (first = r.first_failure()))
            first_suite = r.name;
    if (fmt == Format::json) {
        json doc{{"suite", suite}, {"max", max}, {"ok", nfail == 0}, {"pass", npass}, {"fail", nfail}, {"note", nnote},
                 {"reports", reports}};
        doc["first_failure"] = first ? json{{"report", first_suite}, {"tag", first->tag}, {"detail", first->detail}} : json(nullptr);
        std::cout << doc.dump(2) << "\n";
    } else if (fmt == Format::text) {
        std::cout << "summary: pass=" << npass << " fail=" << nfail << " note=" << nnote << "\n";
        if (first)
            std::cout << "first failure: " << first_suite << " " << first->tag << "\n";
    }
    if (first) {
        std::cerr << "verification failed: " << first_suite << " " << first->tag << "\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"interlacing Fibonacci sequences toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "text";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
    long prec_opt = 0;
    app.add_option("--prec", prec_opt, "precision in bits (default from IFIB_PRECISION_BITS or 128)");

    long m = 0, j = 1, from = 1, to = 10, r = 0, N = 0, a = 0, mod = 0, max = 5, i = 0, count = 0;
    int digits = 20;
    std::string family, appendix, suite;
    bool verbose = false;

    auto* seq = app.add_subcommand("seq", "exact sequence terms");
    seq->add_option("--m", m)->required();
    seq->add_option("--j", j);
    seq->add_option("--from", from)->required();
    seq->add_option("--to", to)->required();
    seq->add_option("--family", family, "F, G or N")->default_val("F");

    auto* table = app.add_subcommand("table", "appendix numerator tables");
    table->add_option("--appendix", appendix)->required();
    table->add_option("--m", m);

    auto* conv = app.add_subcommand("convergents", "vector convergent, limit and distance");
    conv->add_option("--m", m)->required();
    conv->add_option("--r", r)->required();
    conv->add_option("--digits", digits);

    auto* polys = app.add_subcommand("polys", "polynomial family members");
    polys->add_option("--family", family)->required();
    polys->add_option("--m", m)->required();

    auto* fl = app.add_subcommand("fleck", "alternating binomial sum");
    fl->add_option("--N", N)->required();
    fl->add_option("--a", a)->required();
    fl->add_option("--mod", mod)->required();

    auto* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("--suite", suite)->required();
    ver->add_option("--max", max);
    ver->add_flag("--verbose", verbose);

    auto* mel = app.add_subcommand("mellin", "Mellin transform polynomial");
    mel->add_option("--family", family)->required();
    mel->add_option("--m", m)->required();

    auto* mn = app.add_subcommand("minors", "i x i minor sequence and its recurrence");
    mn->add_option("--m", m)->required();
    mn->add_option("--i", i)->required();
    mn->add_option("--family", family)->default_val("F");
    mn->add_option("--from", from);
    mn->add_option("--count", count);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Format fmt = format == "json" ? Format::json : format == "csv" ? Format::csv : Format::text;
    try {
        mpfr_prec_t prec = default_precision();
        if (prec_opt != 0) {
            if (prec_opt < 32 || prec_opt > 65536)
                throw UsageError("--prec must be in [32, 65536]");
            prec = static_cast<mpfr_prec_t>(prec_opt);
        }
        Out o;
        if (*seq)
            o = do_seq(m, j, from, to, family);
        else if (*table)
            o = do_table(appendix, m);
        else if (*conv)
            o = do_convergents(m, r, digits, prec);
        else if (*polys)
            o = do_polys(family, m);
        else if (*fl)
            o = do_fleck(N, a, mod);
        else if (*mel)
            o = do_mellin(family, m);
        else if (*mn)
            o = do_minors(m, i, family, from, count);
        else if (*ver)
            return do_verify(suite, max, verbose, fmt, prec);
        o.emit(fmt, std::cout);
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 1;
    }
}
