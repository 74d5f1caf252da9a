#include "flagprod/errors.hpp"
#include "flagprod/experiment.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace flagprod {

namespace {

using Json = nlohmann::ordered_json;

Json simplex_json(const Simplex& s)
{
    Json a = Json::array();
    for (Vertex v : s)
        a.push_back(v);
    return a;
}

Json witness_json(const Witness& w)
{
    Json j = Json::object();
    if (w.sigma)
        j["sigma"] = simplex_json(*w.sigma);
    if (w.degree)
        j["degree"] = *w.degree;
    if (!w.detail.empty())
        j["detail"] = w.detail;
    return j;
}

Json verdict_json(const CheckVerdict& v)
{
    Json j = Json::object();
    switch (v.outcome) {
    case Outcome::pass: j["pass"] = true; break;
    case Outcome::fail: j["pass"] = false; break;
    case Outcome::skipped: j["pass"] = "skipped"; break;
    }
    Json w = Json::array();
    for (const auto& x : v.witnesses)
        w.push_back(witness_json(x));
    j["witnesses"] = std::move(w);
    if (!v.reason.empty())
        j["reason"] = v.reason;
    return j;
}

std::string format_fraction(double x)
{
    std::ostringstream os;
    os << std::setprecision(6) << std::fixed << x;
    return os.str();
}

std::int64_t parse_int(std::string_view text, const char* what)
{
    std::int64_t v = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end)
        throw InvalidInput(std::string("cannot parse ") + what + " '" + std::string(text) + "'");
    return v;
}

InfiniteFactor factor_from_json(const Json& j)
{
    if (!j.is_object())
        throw InvalidInput("infinite factor must be a JSON object");
    InfiniteFactor f;
    try {
        f.reduced_betti = j.at("reduced_betti").get<std::vector<std::int64_t>>();
        for (const auto& x : j.at("l2_betti")) {
            if (x.is_number_integer())
                f.l2_betti.emplace_back(static_cast<long>(x.get<std::int64_t>()));
            else
                f.l2_betti.push_back(parse_rational(x.get<std::string>()));
        }
        f.euler_reduced = j.at("euler_reduced").get<std::int64_t>();
        f.cd = j.at("cd").get<int>();
        f.groupring_support_min = j.at("groupring_support_min").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("infinite factor: ") + e.what());
    }
    return f;
}

}  // namespace

std::string to_json(const TrialReport& r, const JsonOptions& opt)
{
    Json j = Json::object();
    j["trial"] = r.trial;
    j["n"] = r.n;
    j["p"] = r.p ? Json(*r.p) : Json(nullptr);
    j["seed"] = r.seed;
    j["digest"] = r.digest;
    j["dim"] = r.dim;
    j["f_vector"] = r.f_vector;
    if (r.resource_failure)
        j["status"] = "failed-resource";
    Json checks = Json::object();
    for (Check c : kAllChecks)
        if (auto it = r.checks.find(c); it != r.checks.end())
            checks[std::string(check_name(c))] = verdict_json(it->second);
    j["checks"] = std::move(checks);

    Json inv = Json::object();
    inv["chi"] = r.chi ? Json(to_string(*r.chi)) : Json(nullptr);
    if (r.l2) {
        Json a = Json::array();
        for (const auto& x : *r.l2)
            a.push_back(to_string(x));
        inv["l2"] = std::move(a);
    } else {
        inv["l2"] = nullptr;
    }
    inv["support"] = r.support ? Json(*r.support) : Json(nullptr);
    inv["ends"] = r.ends ? Json(to_string(*r.ends)) : Json(nullptr);
    inv["cd_q"] = r.cd_q ? Json(*r.cd_q) : Json(nullptr);
    inv["vcd_z"] = r.vcd_z ? Json::array({r.vcd_z->first, r.vcd_z->second}) : Json(nullptr);
    j["invariants"] = std::move(inv);
    if (opt.include_timing)
        j["ms"] = r.ms;
    return j.dump();
}

std::string summary_csv(const ExperimentSummary& s)
{
    std::ostringstream os;
    os << "check,trials,passes,pass_fraction,mean_ms\n";
    for (const auto& row : s.checks) {
        os << check_name(row.check) << ',';
        if (!row.requested) {
            os << "skipped,skipped,skipped,skipped\n";
            continue;
        }
        os << row.trials << ',' << row.passes << ',';
        const auto frac = row.pass_fraction();
        os << (frac ? format_fraction(*frac) : std::string("skipped")) << ',';
        os << std::setprecision(3) << std::fixed << row.mean_ms << '\n';
    }
    return os.str();
}

std::map<Check, double> parse_thresholds(const std::string& json_text)
{
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("thresholds: ") + e.what());
    }
    if (!j.is_object())
        throw InvalidInput("thresholds must be a JSON object");
    std::map<Check, double> out;
    for (const auto& [k, v] : j.items()) {
        if (!v.is_number())
            throw InvalidInput("threshold for '" + k + "' must be a number");
        out[parse_check(k)] = v.get<double>();
    }
    return out;
}

InfiniteFactor parse_infinite_factor(const std::string& json_text)
{
    try {
        return factor_from_json(Json::parse(json_text));
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("infinite factor: ") + e.what());
    }
}

GroupAssignment parse_assignment(std::string_view spec, int n)
{
    const auto colon = spec.find(':');
    const std::string_view kind = spec.substr(0, colon);
    const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
    if (kind == "raag" && colon == std::string_view::npos)
        return GroupAssignment::raag(n);
    if (kind == "finite-const")
        return GroupAssignment::constant(FiniteFactor{parse_int(arg, "order parameter q")}, n);
    if (kind == "finite") {
        std::vector<std::int64_t> q;
        std::size_t start = 0;
        while (start <= arg.size()) {
            const std::size_t end = std::min(arg.find(',', start), arg.size());
            q.push_back(parse_int(arg.substr(start, end - start), "order parameter q"));
            start = end + 1;
        }
        if (static_cast<int>(q.size()) != n)
            throw InvalidInput("finite assignment lists " + std::to_string(q.size()) + " orders for " +
                               std::to_string(n) + " vertices");
        return GroupAssignment::finite_orders(q);
    }
    if (kind == "infinite") {
        std::ifstream in{std::string(arg)};
        if (!in)
            throw InvalidInput("cannot read factor profile '" + std::string(arg) + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        Json j;
        try {
            j = Json::parse(buf.str());
        } catch (const nlohmann::json::exception& e) {
            throw InvalidInput(std::string("factor profile: ") + e.what());
        }
        if (j.is_array()) {
            std::vector<FactorSpec> f;
            for (const auto& x : j)
                f.emplace_back(factor_from_json(x));
            if (static_cast<int>(f.size()) != n)
                throw InvalidInput("factor profile lists " + std::to_string(f.size()) + " groups for " +
                                   std::to_string(n) + " vertices");
            return GroupAssignment::per_vertex(std::move(f));
        }
        return GroupAssignment::constant(factor_from_json(j), n);
    }
    throw InvalidInput("unknown assignment '" + std::string(spec) +
                       "' (expected finite:q,..., finite-const:q, raag or infinite:<file>)");
}

}  // namespace flagprod
