// Copyright 2026 The natspec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "natspec/io.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "natspec/errors.hpp"

namespace natspec::io {

namespace {

Rational parse_turns(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (!j.is_string()) throw InvalidArgument("angle turns must be a string \"p/q\" or an integer");
    const auto s = j.get<std::string>();
    try {
        const auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(s));
        const boost::multiprecision::cpp_int p(s.substr(0, slash));
        const boost::multiprecision::cpp_int q(s.substr(slash + 1));
        if (q == 0) throw InvalidArgument("angle turns '" + s + "' has a zero denominator");
        return Rational(p, q);
    } catch (const InvalidArgument&) {
        throw;
    } catch (const std::exception&) {
        throw InvalidArgument("malformed angle turns '" + s + "'");
    }
}

double number(const Json& j, const char* key, const char* where) {
    if (!j.contains(key)) return 0.0;
    const auto& v = j.at(key);
    if (!v.is_number()) throw InvalidArgument(std::string(where) + ": '" + key + "' must be a number");
    return v.get<double>();
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

Json angle_to_json(const Angle& a, const GeneratorBasis& basis) {
    Json coeffs = Json::object();
    for (std::size_t i = 0; i < a.rank(); ++i) {
        if (a.coeffs()[i] != 0) coeffs[basis[i].name] = a.coeffs()[i];
    }
    const auto& t = a.turns();
    Json j;
    j["turns"] = numerator(t).str() + "/" + denominator(t).str();
    j["coeffs"] = std::move(coeffs);
    return j;
}

Angle angle_from_json(const Json& j, const GeneratorBasis& basis) {
    if (!j.is_object()) throw InvalidArgument("angle must be an object");
    const Rational turns = j.contains("turns") ? parse_turns(j.at("turns")) : Rational(0);
    std::vector<std::int64_t> coeffs(basis.size(), 0);
    if (j.contains("coeffs")) {
        const auto& c = j.at("coeffs");
        if (!c.is_object()) throw InvalidArgument("angle coeffs must be an object {name: int}");
        for (const auto& [name, v] : c.items()) {
            const auto idx = basis.index_of(name);
            if (idx < 0) throw InvalidArgument("angle refers to unknown generator '" + name + "'");
            if (!v.is_number_integer()) throw InvalidArgument("coefficient of '" + name + "' must be an integer");
            coeffs[static_cast<std::size_t>(idx)] = v.get<std::int64_t>();
        }
    }
    return Angle(turns, std::move(coeffs));
}

Json basis_to_json(const GeneratorBasis& basis) {
    Json arr = Json::array();
    for (const auto& g : basis.generators()) arr.push_back(Json{{"name", g.name}, {"value", g.value}});
    return arr;
}

GeneratorBasis basis_from_json(const Json& j) {
    if (!j.is_array()) throw InvalidArgument("basis must be an array");
    std::vector<Generator> gens;
    for (const auto& g : j) {
        if (!g.is_object() || !g.contains("name") || !g.at("name").is_string() || !g.contains("value") ||
            !g.at("value").is_number()) {
            throw InvalidArgument("basis entries need a string 'name' and a numeric 'value'");
        }
        gens.push_back({g.at("name").get<std::string>(), g.at("value").get<double>()});
    }
    return GeneratorBasis(std::move(gens));
}

Json measure_to_json(const MixedMeasure& mu) {
    Json j;
    j["basis"] = basis_to_json(mu.basis());
    Json atoms = Json::array();
    for (const auto& [at, w] : mu.disc.atoms()) {
        atoms.push_back(Json{{"angle", angle_to_json(at, mu.basis())}, {"re", w.real()}, {"im", w.imag()}});
    }
    j["atoms"] = std::move(atoms);
    Json ac = Json::array();
    for (const auto& [k, c] : mu.ac.coeffs()) ac.push_back(Json{{"k", k}, {"re", c.real()}, {"im", c.imag()}});
    j["ac"] = std::move(ac);
    return j;
}

MixedMeasure measure_from_json(const Json& j) {
    if (!j.is_object()) throw InvalidArgument("measure must be a JSON object");
    const GeneratorBasis basis = j.contains("basis") ? basis_from_json(j.at("basis")) : GeneratorBasis{};
    MixedMeasure mu{DiscreteMeasure(basis)};
    if (j.contains("atoms")) {
        const auto& atoms = j.at("atoms");
        if (!atoms.is_array()) throw InvalidArgument("'atoms' must be an array");
        for (const auto& a : atoms) {
            if (!a.is_object() || !a.contains("angle")) throw InvalidArgument("each atom needs an 'angle'");
            mu.disc.add(angle_from_json(a.at("angle"), basis), {number(a, "re", "atom"), number(a, "im", "atom")});
        }
    }
    if (j.contains("ac")) {
        const auto& ac = j.at("ac");
        if (!ac.is_array()) throw InvalidArgument("'ac' must be an array");
        for (const auto& c : ac) {
            if (!c.is_object() || !c.contains("k") || !c.at("k").is_number_integer()) {
                throw InvalidArgument("each ac entry needs an integer 'k'");
            }
            mu.ac.add(c.at("k").get<std::int64_t>(), {number(c, "re", "ac entry"), number(c, "im", "ac entry")});
        }
    }
    return mu;
}

MixedMeasure read_measure(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open '" + path.string() + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument("'" + path.string() + "': " + e.what());
    }
    return measure_from_json(j);
}

Json fekete_to_json(const FeketeReport& r) {
    Json steps = Json::array();
    for (const auto& s : r.steps) steps.push_back(Json{{"k", s.k}, {"norm", s.norm}, {"r", s.r}});
    return Json{{"steps", std::move(steps)}, {"final_bound", r.final_bound}, {"budget_hit", r.budget_hit}};
}

Json report_to_json(const VerificationReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json values = Json::object();
        for (const auto& [k, v] : c.values) values[k] = v;
        checks.push_back(Json{{"name", c.name},
                              {"passed", c.passed},
                              {"skipped", c.skipped},
                              {"residual", c.residual},
                              {"threshold", c.threshold},
                              {"values", std::move(values)},
                              {"detail", c.detail}});
    }
    return Json{{"passed", r.passed()}, {"checks", std::move(checks)}};
}

namespace {

Json radius_to_json(const RadiusInfo& r) {
    Json j{{"value", r.value}};
    j["fekete"] = r.fekete ? Json(*r.fekete) : Json(nullptr);
    j["torus_lower"] = r.torus_lower ? Json(*r.torus_lower) : Json(nullptr);
    j["budget_hit"] = r.budget_hit;
    return j;
}

}  // namespace

Json decomposition_to_json(const DecompositionResult& r, const DecompositionOptions& opts) {
    Json j;
    j["basis"] = basis_to_json(r.basis);
    j["alpha"] = angle_to_json(r.alpha, r.basis);
    j["beta"] = angle_to_json(r.beta, r.basis);
    j["radius_mode"] = std::string(to_string(opts.radius_mode));
    j["R0"] = radius_to_json(r.r0);
    j["R1"] = radius_to_json(r.r1);
    j["options"] = Json{{"N", opts.N},         {"grid", opts.grid},       {"tol", opts.tol},
                        {"density_tol", opts.density_tol}, {"residual_tol", opts.residual_tol},
                        {"k_max", opts.k_max}, {"refine", opts.refine}};
    j["nu2_atoms"] = r.nu2.size();
    j["verification"] = report_to_json(r.report);
    return j;
}

std::string dump_with_timestamp(const Json& body, const std::string& timestamp) {
    Json out;
    out["timestamp"] = timestamp;
    for (const auto& [k, v] : body.items()) {
        if (k != "timestamp") out[k] = v;
    }
    return out.dump(2) + "\n";
}

std::string utc_timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string points_to_csv(std::span<const Complex> points) {
    std::string out = "re,im\n";
    for (const auto& z : points) {
        out += format_double(z.real());
        out += ',';
        out += format_double(z.imag());
        out += '\n';
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw InvalidArgument("failed writing '" + path.string() + "'");
}

}  // namespace natspec::io
