// config_io.cpp — strict reader/writer for the declarative model format.

#include "tcg/config_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "tcg/errors.hpp"

namespace tcg {

namespace {

struct Value {
    bool is_array = false;
    std::vector<std::string> items;  // raw tokens; single-element for scalars
};

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        if (line[k] == '"') in_string = !in_string;
        if (line[k] == '#' && !in_string) return line.substr(0, k);
    }
    return line;
}

double parse_number(const std::string& token, int line_no) {
    const std::string t = trim(token);
    if (t.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty number");
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0' || !std::isfinite(v)) {
        throw ConfigError("line " + std::to_string(line_no) + ": bad number '" + t + "'");
    }
    return v;
}

int parse_index(const std::string& token, int line_no) {
    const double v = parse_number(token, line_no);
    if (v != std::floor(v)) {
        throw ConfigError("line " + std::to_string(line_no) + ": expected integer, got '" +
                          token + "'");
    }
    return static_cast<int>(v);
}

std::string parse_string(const std::string& token, int line_no) {
    const std::string t = trim(token);
    if (t.size() < 2 || t.front() != '"' || t.back() != '"') {
        throw ConfigError("line " + std::to_string(line_no) + ": expected quoted string, got '" +
                          t + "'");
    }
    return t.substr(1, t.size() - 2);
}

Value parse_value(const std::string& raw, int line_no) {
    Value v;
    const std::string t = trim(raw);
    if (t.empty()) throw ConfigError("line " + std::to_string(line_no) + ": missing value");
    if (t.front() == '[') {
        if (t.back() != ']') {
            throw ConfigError("line " + std::to_string(line_no) + ": unterminated array");
        }
        v.is_array = true;
        const std::string body = t.substr(1, t.size() - 2);
        std::string item;
        bool in_string = false;
        for (const char ch : body) {
            if (ch == '"') in_string = !in_string;
            if (ch == ',' && !in_string) {
                v.items.push_back(trim(item));
                item.clear();
            } else {
                item += ch;
            }
        }
        if (!trim(item).empty()) v.items.push_back(trim(item));
        for (const auto& it : v.items) {
            if (it.empty()) {
                throw ConfigError("line " + std::to_string(line_no) + ": empty array element");
            }
        }
    } else {
        v.items.push_back(t);
    }
    return v;
}

struct KeyValue {
    Value value;
    int line_no = 0;
};

using Table = std::map<std::string, KeyValue>;

void insert_unique(Table& table, const std::string& key, Value value, int line_no) {
    if (!table.emplace(key, KeyValue{std::move(value), line_no}).second) {
        throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
}

const KeyValue& require(const Table& table, const std::string& key, const char* where) {
    const auto it = table.find(key);
    if (it == table.end()) {
        throw ConfigError(std::string(where) + ": missing required key '" + key + "'");
    }
    return it->second;
}

double scalar_number(const KeyValue& kv, const std::string& key) {
    if (kv.value.is_array || kv.value.items.size() != 1) {
        throw ConfigError("line " + std::to_string(kv.line_no) + ": '" + key +
                          "' must be a scalar");
    }
    return parse_number(kv.value.items.front(), kv.line_no);
}

int scalar_index(const KeyValue& kv, const std::string& key) {
    if (kv.value.is_array || kv.value.items.size() != 1) {
        throw ConfigError("line " + std::to_string(kv.line_no) + ": '" + key +
                          "' must be a scalar");
    }
    return parse_index(kv.value.items.front(), kv.line_no);
}

void check_keys(const Table& table, std::initializer_list<const char*> allowed,
                const char* where) {
    for (const auto& [key, kv] : table) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) {
            throw ConfigError("line " + std::to_string(kv.line_no) + ": unknown key '" + key +
                              "' in " + where);
        }
    }
}

} // namespace

ModelConfig read_model_config(std::istream& in) {
    Table top;
    std::vector<Table> drive_tables;
    std::vector<Table> decay_tables;
    Table* current = &top;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(strip_comment(line));
        if (text.empty()) continue;
        if (text == "[[drive]]") {
            drive_tables.emplace_back();
            current = &drive_tables.back();
            continue;
        }
        if (text == "[[decay]]") {
            decay_tables.emplace_back();
            current = &decay_tables.back();
            continue;
        }
        if (text.front() == '[') {
            throw ConfigError("line " + std::to_string(line_no) + ": unknown section '" +
                              text + "'");
        }
        const std::size_t eq = text.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(text.substr(0, eq));
        if (key.empty()) {
            throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        }
        insert_unique(*current, key, parse_value(text.substr(eq + 1), line_no), line_no);
    }

    check_keys(top, {"dim", "manifold", "frame", "h0"}, "the top-level section");

    ModelConfig config;
    DrivenLevelSystem& sys = config.system;
    sys.dim = scalar_index(require(top, "dim", "model"), "dim");
    if (sys.dim < 1) throw ConfigError("dim must be >= 1");

    const KeyValue& manifold_kv = require(top, "manifold", "model");
    if (!manifold_kv.value.is_array ||
        manifold_kv.value.items.size() != static_cast<std::size_t>(sys.dim)) {
        throw ConfigError("manifold must be an array of dim tags");
    }
    for (const auto& item : manifold_kv.value.items) {
        const std::string tag = parse_string(item, manifold_kv.line_no);
        if (tag == "lower") {
            sys.manifold.push_back(Manifold::Lower);
        } else if (tag == "upper") {
            sys.manifold.push_back(Manifold::Upper);
        } else {
            throw ConfigError("manifold tags must be \"lower\" or \"upper\", got \"" + tag +
                              "\"");
        }
    }

    sys.h0 = ComplexMatrix::Zero(sys.dim, sys.dim);
    if (const auto it = top.find("h0"); it != top.end()) {
        const auto& kv = it->second;
        const std::size_t expect = 2 * static_cast<std::size_t>(sys.dim) *
                                   static_cast<std::size_t>(sys.dim);
        if (!kv.value.is_array || kv.value.items.size() != expect) {
            throw ConfigError("h0 must be an array of " + std::to_string(expect) +
                              " numbers (row-major re/im pairs)");
        }
        std::size_t k = 0;
        for (int r = 0; r < sys.dim; ++r) {
            for (int c = 0; c < sys.dim; ++c) {
                const double re = parse_number(kv.value.items[k++], kv.line_no);
                const double im = parse_number(kv.value.items[k++], kv.line_no);
                sys.h0(r, c) = Complex(re, im);
            }
        }
    }

    if (const auto it = top.find("frame"); it != top.end()) {
        const auto& kv = it->second;
        if (!kv.value.is_array || kv.value.items.size() != static_cast<std::size_t>(sys.dim)) {
            throw ConfigError("frame must be an array of dim phases");
        }
        for (const auto& item : kv.value.items) {
            config.frame.push_back(parse_number(item, kv.line_no));
        }
    }

    for (const auto& table : drive_tables) {
        check_keys(table, {"lower", "upper", "rabi_re", "rabi_im", "detuning"},
                   "a [[drive]] block");
        Drive d;
        d.lower = scalar_index(require(table, "lower", "[[drive]]"), "lower") - 1;
        d.upper = scalar_index(require(table, "upper", "[[drive]]"), "upper") - 1;
        const double re = scalar_number(require(table, "rabi_re", "[[drive]]"), "rabi_re");
        double im = 0.0;
        if (const auto it = table.find("rabi_im"); it != table.end()) {
            im = scalar_number(it->second, "rabi_im");
        }
        d.rabi = Complex(re, im);
        d.detuning = scalar_number(require(table, "detuning", "[[drive]]"), "detuning");
        sys.drives.push_back(normalize_drive(d));
    }

    for (const auto& table : decay_tables) {
        check_keys(table, {"target", "source", "rate"}, "a [[decay]] block");
        DecayChannel c;
        c.target = scalar_index(require(table, "target", "[[decay]]"), "target") - 1;
        c.source = scalar_index(require(table, "source", "[[decay]]"), "source") - 1;
        c.rate = scalar_number(require(table, "rate", "[[decay]]"), "rate");
        sys.decays.push_back(c);
    }

    validate_system(sys);
    return config;
}

ModelConfig read_model_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return read_model_config(in);
}

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string write_model_config(const DrivenLevelSystem& sys,
                               const std::vector<double>& frame) {
    std::ostringstream out;
    out << "dim = " << sys.dim << "\n";
    out << "manifold = [";
    for (int i = 0; i < sys.dim; ++i) {
        if (i) out << ", ";
        out << (sys.manifold[static_cast<std::size_t>(i)] == Manifold::Lower ? "\"lower\""
                                                                             : "\"upper\"");
    }
    out << "]\n";
    if (!frame.empty()) {
        out << "frame = [";
        for (std::size_t i = 0; i < frame.size(); ++i) {
            if (i) out << ", ";
            out << fmt(frame[i]);
        }
        out << "]\n";
    }
    if (sys.h0.cwiseAbs().maxCoeff() != 0.0) {
        out << "h0 = [";
        bool first = true;
        for (int r = 0; r < sys.dim; ++r) {
            for (int c = 0; c < sys.dim; ++c) {
                if (!first) out << ", ";
                out << fmt(sys.h0(r, c).real()) << ", " << fmt(sys.h0(r, c).imag());
                first = false;
            }
        }
        out << "]\n";
    }
    for (const auto& d : sys.drives) {
        out << "\n[[drive]]\n";
        out << "lower = " << d.lower + 1 << "\n";
        out << "upper = " << d.upper + 1 << "\n";
        out << "rabi_re = " << fmt(d.rabi.real()) << "\n";
        out << "rabi_im = " << fmt(d.rabi.imag()) << "\n";
        out << "detuning = " << fmt(d.detuning) << "\n";
    }
    for (const auto& c : sys.decays) {
        out << "\n[[decay]]\n";
        out << "target = " << c.target + 1 << "\n";
        out << "source = " << c.source + 1 << "\n";
        out << "rate = " << fmt(c.rate) << "\n";
    }
    return out.str();
}

bool models_identical(const DrivenLevelSystem& a, const DrivenLevelSystem& b) {
    if (a.dim != b.dim || a.manifold != b.manifold) return false;
    if (a.h0 != b.h0) return false;
    if (a.drives.size() != b.drives.size() || a.decays.size() != b.decays.size()) return false;
    for (std::size_t k = 0; k < a.drives.size(); ++k) {
        const auto &x = a.drives[k], &y = b.drives[k];
        if (x.lower != y.lower || x.upper != y.upper || x.rabi != y.rabi ||
            x.detuning != y.detuning) {
            return false;
        }
    }
    for (std::size_t k = 0; k < a.decays.size(); ++k) {
        const auto &x = a.decays[k], &y = b.decays[k];
        if (x.target != y.target || x.source != y.source || x.rate != y.rate) return false;
    }
    return true;
}

} // namespace tcg
