#pragma once

// Finite, explicitly tabulated semicubic complexes.

#include <cubix/complex.hpp>

#include <json.hpp>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cubix {

struct PresCube {
    std::uint32_t index = 0;
    auto operator<=>(const PresCube&) const = default;
};

class ComplexPresentation {
public:
    using cube_type = PresCube;

    explicit ComplexPresentation(int top_dim = 0) : top_dim_(top_dim), levels_(top_dim + 1) {
        if (top_dim < 0) throw ContractViolation("top_dim must be >= 0");
    }

    int top_dim() const { return top_dim_; }
    std::size_t size() const { return names_.size(); }

    PresCube add_cube(const std::string& id, int dim) {
        if (dim < 0 || dim > top_dim_)
            throw ContractViolation("cube '" + id + "' has dimension outside 0..top_dim");
        if (by_name_.count(id)) throw ContractViolation("duplicate cube id '" + id + "'");
        const PresCube c{static_cast<std::uint32_t>(names_.size())};
        names_.push_back(id);
        dims_.push_back(dim);
        faces_.emplace_back(2 * dim, kUnset);
        levels_[dim].push_back(c);
        by_name_.emplace(id, c);
        return c;
    }

    void set_face(PresCube x, int i, Sign s, PresCube f) {
        check_cube(x);
        check_cube(f);
        if (i < 1 || i > dims_[x.index])
            throw ContractViolation("face index " + std::to_string(i) + " out of range for '" +
                                    names_[x.index] + "'");
        faces_[x.index][slot(i, s)] = static_cast<std::int64_t>(f.index);
    }

    int dim(PresCube x) const {
        check_cube(x);
        return dims_[x.index];
    }

    bool has_face(PresCube x, int i, Sign s) const {
        check_cube(x);
        return i >= 1 && i <= dims_[x.index] && faces_[x.index][slot(i, s)] != kUnset;
    }

    PresCube face(PresCube x, int i, Sign s) const {
        check_cube(x);
        if (i < 1 || i > dims_[x.index])
            throw ContractViolation("face index " + std::to_string(i) + " out of range for '" +
                                    names_[x.index] + "'");
        const auto f = faces_[x.index][slot(i, s)];
        if (f == kUnset)
            throw ContractViolation("face table has no entry for (" + names_[x.index] + ", " +
                                    std::to_string(i) + ", " + to_char(s) + ")");
        return PresCube{static_cast<std::uint32_t>(f)};
    }

    const std::string& name(PresCube x) const {
        check_cube(x);
        return names_[x.index];
    }

    std::optional<PresCube> find(const std::string& id) const {
        auto it = by_name_.find(id);
        if (it == by_name_.end()) return std::nullopt;
        return it->second;
    }

    PresCube at(const std::string& id) const {
        auto c = find(id);
        if (!c) throw ContractViolation("unknown cube id '" + id + "'");
        return *c;
    }

    /// Cubes of dimension n in insertion order; empty above top_dim.
    const std::vector<PresCube>& cubes(int n) const {
        static const std::vector<PresCube> none;
        if (n < 0 || n > top_dim_) return none;
        return levels_[n];
    }

    /// Table totality and face dimensions; commutation is checked separately.
    std::vector<std::string> structural_errors() const {
        std::vector<std::string> errors;
        for (std::size_t x = 0; x < names_.size(); ++x) {
            const int n = dims_[x];
            for (int i = 1; i <= n; ++i) {
                for (Sign s : kSigns) {
                    const auto f = faces_[x][slot(i, s)];
                    const std::string where =
                        "(" + names_[x] + ", " + std::to_string(i) + ", " + to_char(s) + ")";
                    if (f == kUnset)
                        errors.push_back("missing face " + where);
                    else if (dims_[f] != n - 1)
                        errors.push_back("face " + where + " = '" + names_[f] + "' has dimension " +
                                         std::to_string(dims_[f]));
                }
            }
        }
        return errors;
    }

    ValidationReport<PresCube> validate_commutation() const {
        std::vector<PresCube> sample;
        for (int n = 2; n <= top_dim_; ++n)
            sample.insert(sample.end(), levels_[n].begin(), levels_[n].end());
        return cubix::validate_commutation(*this, sample);
    }

private:
    static constexpr std::int64_t kUnset = -1;
    static std::size_t slot(int i, Sign s) { return 2 * (i - 1) + (s == Sign::plus ? 0 : 1); }

    void check_cube(PresCube x) const {
        if (x.index >= names_.size()) throw ContractViolation("cube index out of range");
    }

    int top_dim_;
    std::vector<std::vector<PresCube>> levels_;
    std::vector<std::string> names_;
    std::vector<int> dims_;
    std::vector<std::vector<std::int64_t>> faces_;
    std::map<std::string, PresCube> by_name_;
};

/// A rational-valued function on the cubes of one dimension, keyed by cube id.
struct FunctionOnCubes {
    int dim = 0;
    std::map<std::string, Rational> values;

    Rational operator()(const std::string& id) const {
        auto it = values.find(id);
        if (it == values.end()) throw ContractViolation("function undefined on cube '" + id + "'");
        return it->second;
    }

    /// Evaluator over the cubes of a presentation.
    auto on(const ComplexPresentation& k) const {
        return [this, &k](PresCube c) { return (*this)(k.name(c)); };
    }
};

// ---------------------------------------------------------------- JSON

namespace detail {
inline std::string json_id(const nlohmann::json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw EncodingError("cube id must be a string or integer, got " + j.dump());
}

inline Rational json_rational(const nlohmann::json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
    throw EncodingError("rational must be a \"p/q\" string, got " + j.dump());
}
}  // namespace detail

inline ComplexPresentation presentation_from_json(const nlohmann::json& j) {
    try {
        const int top = j.at("top_dim").get<int>();
        ComplexPresentation k(top);
        for (const auto& [key, ids] : j.at("cubes").items()) {
            int d = 0;
            try {
                d = std::stoi(key);
            } catch (const std::exception&) {
                throw EncodingError("cubes: dimension key '" + key + "' is not an integer");
            }
            for (const auto& id : ids) k.add_cube(detail::json_id(id), d);
        }
        for (const auto& f : j.at("faces")) {
            const auto x = k.find(detail::json_id(f.at("cube")));
            const auto y = k.find(detail::json_id(f.at("face")));
            if (!x || !y) throw EncodingError("faces: unknown cube in entry " + f.dump());
            k.set_face(*x, f.at("i").get<int>(), parse_sign(f.at("sign").get<std::string>()), *y);
        }
        return k;
    } catch (const nlohmann::json::exception& e) {
        throw EncodingError(std::string("presentation JSON: ") + e.what());
    } catch (const ContractViolation& e) {
        throw EncodingError(std::string("presentation JSON: ") + e.what());
    }
}

inline nlohmann::json to_json(const ComplexPresentation& k) {
    nlohmann::json j;
    j["top_dim"] = k.top_dim();
    j["cubes"] = nlohmann::json::object();
    nlohmann::json faces = nlohmann::json::array();
    for (int n = 0; n <= k.top_dim(); ++n) {
        auto& level = j["cubes"][std::to_string(n)];
        level = nlohmann::json::array();
        for (PresCube c : k.cubes(n)) {
            level.push_back(k.name(c));
            for (int i = 1; i <= n; ++i)
                for (Sign s : kSigns)
                    if (k.has_face(c, i, s))
                        faces.push_back({{"cube", k.name(c)},
                                         {"i", i},
                                         {"sign", std::string(1, to_char(s))},
                                         {"face", k.name(k.face(c, i, s))}});
        }
    }
    j["faces"] = std::move(faces);
    return j;
}

inline FunctionOnCubes function_from_json(const nlohmann::json& j) {
    try {
        FunctionOnCubes f;
        f.dim = j.value("dim", 0);
        for (const auto& [id, v] : j.at("values").items()) f.values[id] = detail::json_rational(v);
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw EncodingError(std::string("function JSON: ") + e.what());
    }
}

inline nlohmann::json to_json(const FunctionOnCubes& f) {
    nlohmann::json values = nlohmann::json::object();
    for (const auto& [id, v] : f.values) values[id] = to_string(v);
    return {{"dim", f.dim}, {"values", values}};
}

// ------------------------------------------------- closure of generated cubes

template <class Cube>
struct Presented {
    ComplexPresentation presentation;
    std::vector<Cube> cubes;  // indexed by PresCube::index
    std::map<Cube, PresCube> index;
};

/// Tabulates the given cubes of a generated complex together with all their
/// iterated faces. Ids come from `namer` or default to "c<index>".
template <SemicubicComplex K, class Range>
Presented<typename K::cube_type> present(
    const K& k, const Range& seeds,
    std::function<std::string(const typename K::cube_type&, std::size_t)> namer = {}) {
    using Cube = typename K::cube_type;
    int top = 0;
    std::vector<std::vector<Cube>> by_dim;
    std::map<Cube, int> seen;
    std::vector<Cube> stack;
    for (const auto& c : seeds) {
        if (seen.emplace(c, k.dim(c)).second) stack.push_back(c);
    }
    while (!stack.empty()) {
        Cube c = std::move(stack.back());
        stack.pop_back();
        const int n = k.dim(c);
        top = std::max(top, n);
        if (static_cast<int>(by_dim.size()) <= n) by_dim.resize(n + 1);
        by_dim[n].push_back(c);
        for (int i = 1; i <= n; ++i)
            for (Sign s : kSigns) {
                Cube f = k.face(c, i, s);
                if (seen.emplace(f, n - 1).second) stack.push_back(std::move(f));
            }
    }
    Presented<Cube> out{ComplexPresentation(top), {}, {}};
    for (auto& level : by_dim) std::sort(level.begin(), level.end());
    for (int n = 0; n < static_cast<int>(by_dim.size()); ++n)
        for (const auto& c : by_dim[n]) {
            const std::size_t idx = out.cubes.size();
            const std::string id = namer ? namer(c, idx) : "c" + std::to_string(idx);
            out.index.emplace(c, out.presentation.add_cube(id, n));
            out.cubes.push_back(c);
        }
    for (std::size_t idx = 0; idx < out.cubes.size(); ++idx) {
        const Cube& c = out.cubes[idx];
        const PresCube pc{static_cast<std::uint32_t>(idx)};
        for (int i = 1; i <= k.dim(c); ++i)
            for (Sign s : kSigns) out.presentation.set_face(pc, i, s, out.index.at(k.face(c, i, s)));
    }
    return out;
}

}  // namespace cubix
