#include "critx/io/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "critx/io/csv.hpp"

namespace critx::io {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Entry {
    std::string value;
    int line = 0;
};

using Section = std::map<std::string, Entry>;

class Parsed {
public:
    Parsed(std::string_view text, std::string_view source) : source_(source) {
        std::map<std::string, std::set<std::string>> allowed{
            {"model", {"family", "boundary", "h", "lambda", "D"}},
            {"sweep",
             {"param", "start", "stop", "step", "L", "observable", "r", "engine", "output",
              "symmetry_broken"}},
            {"ed", {"tol", "max_iter", "seed"}},
        };
        std::string current;
        int line_no = 0;
        std::istringstream in{std::string(text)};
        std::string raw;
        while (std::getline(in, raw)) {
            ++line_no;
            std::string_view line = raw;
            if (const auto c = line.find_first_of("#;"); c != std::string_view::npos)
                line = line.substr(0, c);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') fail(line_no, "unterminated section header");
                current = std::string(trim(line.substr(1, line.size() - 2)));
                if (!allowed.contains(current)) fail(line_no, "unknown section [" + current + "]");
                if (sections_.contains(current)) fail(line_no, "repeated section [" + current + "]");
                sections_[current];
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) fail(line_no, "expected key = value");
            const std::string key(trim(line.substr(0, eq)));
            const std::string value(trim(line.substr(eq + 1)));
            if (current.empty()) fail(line_no, "key '" + key + "' outside of any section");
            if (key.empty()) fail(line_no, "missing key");
            if (!allowed[current].contains(key))
                fail(line_no, "unknown key '" + key + "' in [" + current + "]");
            if (value.empty()) fail(line_no, "empty value for '" + key + "'");
            auto& sec = sections_[current];
            if (sec.contains(key)) fail(line_no, "repeated key '" + key + "'");
            sec[key] = {value, line_no};
        }
    }

    [[noreturn]] void fail(int line, const std::string& msg) const {
        throw ConfigError(std::string(source_) + ":" + std::to_string(line) + ": " + msg);
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError(std::string(source_) + ": " + msg);
    }

    const Entry* get(const std::string& section, const std::string& key) const {
        const auto s = sections_.find(section);
        if (s == sections_.end()) return nullptr;
        const auto k = s->second.find(key);
        return k == s->second.end() ? nullptr : &k->second;
    }

    const Entry& require(const std::string& section, const std::string& key) const {
        if (const auto* e = get(section, key)) return *e;
        fail("missing key '" + key + "' in [" + section + "]");
    }

    double number(const Entry& e, const std::string& key) const {
        try {
            const double v = parse_number(e.value);
            if (!std::isfinite(v)) fail(e.line, key + " must be finite");
            return v;
        } catch (const ConfigError&) {
            throw;
        } catch (const Error&) {
            fail(e.line, "'" + e.value + "' is not a number (key '" + key + "')");
        }
    }

    long long integer(const Entry& e, const std::string& key) const {
        long long v = 0;
        const auto* end = e.value.data() + e.value.size();
        const auto [p, ec] = std::from_chars(e.value.data(), end, v);
        if (ec != std::errc{} || p != end)
            fail(e.line, "'" + e.value + "' is not an integer (key '" + key + "')");
        return v;
    }

    bool boolean(const Entry& e, const std::string& key) const {
        if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
        if (e.value == "false" || e.value == "0" || e.value == "no") return false;
        fail(e.line, "'" + e.value + "' is not a boolean (key '" + key + "')");
    }

    template <class F>
    auto at_line(const Entry& e, F&& f) const {
        try {
            return f();
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& ex) {
            fail(e.line, ex.what());
        }
    }

private:
    std::string_view source_;
    std::map<std::string, Section> sections_;
};

std::vector<int> parse_int_list(std::string_view text) {
    std::vector<int> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto item = trim(text.substr(0, comma));
        int v = 0;
        const auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc{} || p != item.data() + item.size())
            throw Error("'" + std::string(item) + "' is not an integer");
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        text = text.substr(comma + 1);
    }
    return out;
}

}  // namespace

std::vector<double> make_grid(double start, double stop, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) throw Error("grid step must be positive");
    if (!(start < stop)) throw Error("grid start must be below stop");
    const double span = (stop - start) / step;
    if (span > 1e7) throw Error("grid has too many points");
    const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = start + static_cast<double>(i) * step;
    return g;
}

std::vector<int> parse_size_list(std::string_view text) {
    text = trim(text);
    if (text.find(':') != std::string_view::npos) {
        std::string s(text);
        std::replace(s.begin(), s.end(), ':', ',');
        const auto v = parse_int_list(s);
        if (v.size() != 3) throw Error("size range must read first:last:step");
        if (v[2] <= 0 || v[1] < v[0]) throw Error("size range needs step > 0 and last >= first");
        std::vector<int> out;
        for (int L = v[0]; L <= v[1]; L += v[2]) out.push_back(L);
        return out;
    }
    auto out = parse_int_list(text);
    if (out.empty()) throw Error("empty size list");
    return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void SweepConfig::validate() const {
    (void)make_grid(start, stop, step);
    if (L_list.empty()) throw Error("no system sizes given");
    for (std::size_t i = 1; i < L_list.size(); ++i)
        if (L_list[i] <= L_list[i - 1]) throw Error("sizes must be strictly increasing");
    DrivingParameter{param_name, start}.validate(model);
    if (engine == Engine::exact) {
        if (model.family() != Family::tfim)
            throw Error("the exact engine is available for the Ising chain only; use engine = ed");
        if (model.boundary() != Boundary::periodic)
            throw Error("the exact engine needs periodic boundaries");
        for (int L : L_list)
            if (L % 2 != 0) throw Error("the exact engine needs even L, got " + std::to_string(L));
    }
    if (symmetry_broken && (engine != Engine::exact || observable.kind != ObservableKind::entropy_1site))
        throw Error("symmetry_broken applies to the exact engine's entropy_1site only");
    lanczos.validate();
    for (int L : L_list) observable.validate(model_at(L, start));
}

ModelSpec SweepConfig::model_at(int L, double g) const {
    return model.with_size(L).with_coupling(param_name, g);
}

std::string SweepConfig::canonical() const {
    std::ostringstream os;
    os << "family=" << to_string(model.family()) << ";boundary=" << to_string(model.boundary());
    for (const auto& [name, value] : model.couplings())
        if (name != param_name) os << ";" << name << "=" << format_number(value);
    os << ";param=" << param_name << ";start=" << format_number(start)
       << ";stop=" << format_number(stop) << ";step=" << format_number(step) << ";L=";
    for (std::size_t i = 0; i < L_list.size(); ++i) os << (i ? "," : "") << L_list[i];
    os << ";observable=" << to_string(observable.kind) << ";r=" << observable.r
       << ";engine=" << to_string(engine) << ";symmetry_broken=" << (symmetry_broken ? 1 : 0);
    if (engine == Engine::ed)
        os << ";tol=" << format_number(lanczos.tol) << ";max_iter=" << lanczos.max_iter
           << ";seed=" << lanczos.seed;
    return os.str();
}

std::uint64_t SweepConfig::hash() const { return fnv1a64(canonical()); }

SweepConfig parse_config_text(std::string_view text, std::string_view source) {
    const Parsed p(text, source);
    SweepConfig cfg;

    const auto& fam_e = p.require("model", "family");
    const Family family = p.at_line(fam_e, [&] { return parse_family(fam_e.value); });
    Boundary boundary = Boundary::periodic;
    if (const auto* e = p.get("model", "boundary"))
        boundary = p.at_line(*e, [&] { return parse_boundary(e->value); });

    const auto& param_e = p.require("sweep", "param");
    cfg.param_name = param_e.value;

    const auto& start_e = p.require("sweep", "start");
    const auto& stop_e = p.require("sweep", "stop");
    const auto& step_e = p.require("sweep", "step");
    cfg.start = p.number(start_e, "start");
    cfg.stop = p.number(stop_e, "stop");
    cfg.step = p.number(step_e, "step");
    if (!(cfg.step > 0.0)) p.fail(step_e.line, "step must be positive, got " + step_e.value);
    if (!(cfg.start < cfg.stop)) p.fail(stop_e.line, "stop must exceed start");

    const std::vector<std::string> names =
        family == Family::tfim ? std::vector<std::string>{"h"} : std::vector<std::string>{"lambda", "D"};
    std::map<std::string, double> couplings;
    for (const auto& n : names) {
        if (const auto* e = p.get("model", n))
            couplings[n] = p.number(*e, n);
        else if (n == cfg.param_name)
            couplings[n] = cfg.start;
        else
            p.fail("missing coupling '" + n + "' in [model]");
    }
    for (const std::string n : {"h", "lambda", "D"})
        if (const auto* e = p.get("model", n); e && !couplings.contains(n))
            p.fail(e->line, "unknown key '" + n + "' for model " + std::string(to_string(family)));
    if (!couplings.contains(cfg.param_name))
        p.fail(param_e.line, "'" + cfg.param_name + "' is not a coupling of model " +
                                 std::string(to_string(family)));

    const auto& L_e = p.require("sweep", "L");
    cfg.L_list = p.at_line(L_e, [&] { return parse_size_list(L_e.value); });
    cfg.model = p.at_line(L_e, [&] { return ModelSpec(family, cfg.L_list.front(), boundary, couplings); });

    const auto& obs_e = p.require("sweep", "observable");
    cfg.observable.kind = p.at_line(obs_e, [&] { return parse_observable(obs_e.value); });
    if (const auto* e = p.get("sweep", "r")) {
        const auto r = p.integer(*e, "r");
        if (r < 0 || r > 1000) p.fail(e->line, "r out of range");
        cfg.observable.r = static_cast<int>(r);
    }
    if (const auto* e = p.get("sweep", "engine"))
        cfg.engine = p.at_line(*e, [&] { return parse_engine(e->value); });
    else
        cfg.engine = family == Family::tfim && boundary == Boundary::periodic ? Engine::exact : Engine::ed;
    if (const auto* e = p.get("sweep", "symmetry_broken"))
        cfg.symmetry_broken = p.boolean(*e, "symmetry_broken");
    if (const auto* e = p.get("sweep", "output")) cfg.output = e->value;

    if (const auto* e = p.get("ed", "tol")) {
        cfg.lanczos.tol = p.number(*e, "tol");
        if (!(cfg.lanczos.tol > 0.0)) p.fail(e->line, "tol must be positive");
    }
    if (const auto* e = p.get("ed", "max_iter")) {
        const auto v = p.integer(*e, "max_iter");
        if (v < 1 || v > 100000) p.fail(e->line, "max_iter out of range");
        cfg.lanczos.max_iter = static_cast<int>(v);
    }
    if (const auto* e = p.get("ed", "seed")) {
        const auto v = p.integer(*e, "seed");
        if (v < 0) p.fail(e->line, "seed must be non-negative");
        cfg.lanczos.seed = static_cast<std::uint64_t>(v);
    }

    // remaining cross-field checks, reported against the most specific line
    const auto& engine_line = p.get("sweep", "engine") ? *p.get("sweep", "engine") : fam_e;
    if (cfg.engine == Engine::exact && family != Family::tfim)
        p.fail(engine_line.line, "the exact engine is available for the Ising chain only; use engine = ed");
    try {
        cfg.validate();
    } catch (const Error& ex) {
        p.fail(ex.what());
    }
    return cfg;
}

SweepConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path.string());
}

}  // namespace critx::io
