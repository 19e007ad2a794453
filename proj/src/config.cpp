#include "lightshift/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace lightshift {

const std::vector<std::string>& scenario_names()
{
    static const std::vector<std::string> names{"fig3a", "fig3b", "cross", "sweep", "regime_check"};
    return names;
}

namespace {

bool parse_double(std::string_view s, double& out)
{
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    if (s.empty())
        return false;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && end == s.data() + s.size() && std::isfinite(out);
}

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos)
        return {};
    return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

} // namespace

double parse_rate(const std::string& raw, double g)
{
    const std::string s = trim(raw);
    double v = 0.0;
    if (!s.empty() && s.back() == 'g') {
        const std::string head = s.substr(0, s.size() - 1);
        if (head.empty() || head == "+")
            return g;
        if (head == "-")
            return -g;
        if (parse_double(head, v))
            return v * g;
    } else if (parse_double(s, v)) {
        return v;
    }
    throw ValidationError("cannot read '" + raw + "' as a rate (number in s^-1 or multiple of g like '10g')");
}

namespace {

struct Reader {
    std::string source;

    [[noreturn]] void fail(const YAML::Node& n, const std::string& what) const
    {
        std::ostringstream os;
        os << source;
        if (n.Mark().line >= 0)
            os << ":" << n.Mark().line + 1;
        os << ": " << what;
        throw ValidationError(os.str());
    }

    std::string scalar(const YAML::Node& n, const std::string& key) const
    {
        if (!n.IsScalar())
            fail(n, "'" + key + "' must be a scalar");
        return n.Scalar();
    }

    double number(const YAML::Node& n, const std::string& key) const
    {
        double v = 0.0;
        if (!parse_double(trim(scalar(n, key)), v))
            fail(n, "'" + key + "' must be a number, got '" + n.Scalar() + "'");
        return v;
    }

    long integer(const YAML::Node& n, const std::string& key, long lo) const
    {
        const double v = number(n, key);
        if (v != std::floor(v) || v < static_cast<double>(lo))
            fail(n, "'" + key + "' must be an integer >= " + std::to_string(lo));
        return static_cast<long>(v);
    }

    bool boolean(const YAML::Node& n, const std::string& key) const
    {
        const std::string s = scalar(n, key);
        if (s == "true")
            return true;
        if (s == "false")
            return false;
        fail(n, "'" + key + "' must be true or false");
    }

    double rate(const YAML::Node& n, const std::string& key, double g) const
    {
        try {
            return parse_rate(scalar(n, key), g);
        } catch (const ValidationError& e) {
            fail(n, "'" + key + "': " + e.what());
        }
    }

    template <class F>
    void each(const YAML::Node& map, const std::string& where, const std::set<std::string>& allowed, F&& f) const
    {
        if (!map.IsMap())
            fail(map, "'" + where + "' must be a mapping");
        for (const auto& kv : map) {
            const std::string key = kv.first.as<std::string>();
            if (!allowed.count(key))
                fail(kv.first, "unknown key '" + key + "'" + (where == "config" ? "" : " in '" + where + "'"));
            f(key, kv.second);
        }
    }
};

const std::set<std::string> kRateKeys{"g",   "delta1", "theta",    "lambda",   "delta2", "omega",
                                      "g_a", "g_b",    "delta1_a", "delta1_b", "delta"};

} // namespace

RunConfig parse_config(const std::string& text, const std::string& source)
{
    RunConfig c;
    Reader r{source};
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        std::ostringstream os;
        os << source << ":" << e.mark.line + 1 << ": " << e.msg;
        throw ValidationError(os.str());
    }
    if (root.IsNull())
        return c;

    // g first so that "10g" anywhere resolves against the configured value.
    double g = kDefaultG;
    if (root.IsMap() && root["params"] && root["params"].IsMap() && root["params"]["g"])
        g = r.rate(root["params"]["g"], "g", kDefaultG);

    const std::set<std::string> top{"scheme", "tier",   "mode",       "scenario", "params", "grid_points",
                                    "jobs",   "strict", "thresholds", "sweep",    "branches", "output"};
    r.each(root, "config", top, [&](const std::string& key, const YAML::Node& v) {
        try {
            if (key == "scheme")
                c.scheme = parse_scheme(r.scalar(v, key));
            else if (key == "tier")
                c.tier = parse_tier(r.scalar(v, key));
            else if (key == "mode")
                c.mode = parse_mode(r.scalar(v, key));
            else if (key == "scenario") {
                c.scenario = r.scalar(v, key);
                const auto& names = scenario_names();
                if (std::find(names.begin(), names.end(), c.scenario) == names.end())
                    r.fail(v, "unknown scenario '" + c.scenario + "'");
            } else if (key == "grid_points")
                c.grid_points = static_cast<std::size_t>(r.integer(v, key, 2));
            else if (key == "jobs")
                c.jobs = static_cast<int>(r.integer(v, key, 1));
            else if (key == "strict")
                c.strict = r.boolean(v, key);
            else if (key == "params") {
                std::set<std::string> allowed = kRateKeys;
                allowed.insert({"n_atoms", "laser_detuning_ratio"});
                r.each(v, "params", allowed, [&](const std::string& k, const YAML::Node& x) {
                    if (k == "n_atoms")
                        c.params[k] = static_cast<double>(r.integer(x, k, 1));
                    else if (k == "laser_detuning_ratio")
                        c.params[k] = r.number(x, k);
                    else
                        c.params[k] = r.rate(x, k, g);
                });
            } else if (key == "thresholds") {
                std::set<std::string> allowed{"small", "separation"};
                for (const auto& n : regime_ratio_names())
                    allowed.insert(n);
                r.each(v, "thresholds", allowed, [&](const std::string& k, const YAML::Node& x) {
                    const double t = r.number(x, k);
                    if (!(t > 0.0))
                        r.fail(x, "threshold '" + k + "' must be positive");
                    if (k == "small")
                        c.thresholds.small = t;
                    else if (k == "separation")
                        c.thresholds.separation = t;
                    else
                        c.thresholds.overrides[k] = t;
                });
            } else if (key == "sweep") {
                SweepConfig s;
                r.each(v, "sweep", {"parameter", "values", "scenario"}, [&](const std::string& k, const YAML::Node& x) {
                    if (k == "parameter")
                        s.parameter = r.scalar(x, k);
                    else if (k == "scenario")
                        s.scenario = r.scalar(x, k);
                    else {
                        if (!x.IsSequence())
                            r.fail(x, "'values' must be a list");
                        for (const auto& e : x)
                            s.values.push_back(kRateKeys.count(s.parameter) || s.parameter.empty()
                                                   ? r.rate(e, "values", g)
                                                   : r.number(e, "values"));
                    }
                });
                const auto& names = override_names();
                if (std::find(names.begin(), names.end(), s.parameter) == names.end())
                    r.fail(v, "sweep needs a known 'parameter', got '" + s.parameter + "'");
                if (s.scenario != "fig3a" && s.scenario != "fig3b" && s.scenario != "cross")
                    r.fail(v, "sweep scenario must be fig3a, fig3b or cross");
                c.sweep = s;
            } else if (key == "branches") {
                if (!v.IsSequence())
                    r.fail(v, "'branches' must be a list of [N, n] pairs");
                for (const auto& e : v) {
                    if (!e.IsSequence() || e.size() != 2)
                        r.fail(e, "each branch must be [N, n]");
                    c.branches.push_back({static_cast<int>(r.integer(e[0], "N", 1)),
                                          static_cast<int>(r.integer(e[1], "n", 0))});
                }
            } else if (key == "output") {
                r.each(v, "output", {"dir"}, [&](const std::string& k, const YAML::Node& x) { c.out_dir = r.scalar(x, k); });
            }
        } catch (const ValidationError& e) {
            const std::string msg = e.what();
            if (msg.rfind(source, 0) == 0)
                throw;
            r.fail(v, msg);
        }
    });
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

SchemeParams scenario_params(const RunConfig& c, int n_atoms)
{
    SchemeParams p;
    const std::string& s = c.scenario == "sweep" && c.sweep ? c.sweep->scenario : c.scenario;
    if (mode_count(c.scheme) == 2 || s == "cross")
        p = cross_params(mode_count(c.scheme) == 2 ? c.scheme : Scheme::CrossPolarization);
    else if (s == "fig3a")
        p = fig3a_params(n_atoms);
    else
        p = fig3b_params(n_atoms);
    return apply_overrides(p, c.params);
}

ScenarioOptions scenario_options(const RunConfig& c)
{
    ScenarioOptions o;
    o.mode = c.mode;
    o.tier = c.tier;
    o.grid_points = c.grid_points;
    return o;
}

Json to_json(const RunConfig& c)
{
    Json j;
    j["scheme"] = to_string(c.scheme);
    j["tier"] = to_string(c.tier);
    j["mode"] = to_string(c.mode);
    j["scenario"] = c.scenario;
    Json params = Json::object();
    for (const auto& [k, v] : c.params)
        params[k] = v;
    j["params"] = params;
    j["grid_points"] = c.grid_points;
    j["jobs"] = c.jobs;
    j["strict"] = c.strict;
    Json th = {{"small", c.thresholds.small}, {"separation", c.thresholds.separation}};
    for (const auto& [k, v] : c.thresholds.overrides)
        th[k] = v;
    j["thresholds"] = th;
    if (c.sweep)
        j["sweep"] = {{"parameter", c.sweep->parameter}, {"values", c.sweep->values}, {"scenario", c.sweep->scenario}};
    else
        j["sweep"] = nullptr;
    Json br = Json::array();
    for (const auto& b : c.branches)
        br.push_back({b.n_atoms, b.photons});
    j["branches"] = br;
    return j;
}

std::string config_hash(const RunConfig& c)
{
    const std::string text = to_json(c).dump();
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace lightshift
