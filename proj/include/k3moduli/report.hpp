#ifndef K3MODULI_REPORT_HPP
#define K3MODULI_REPORT_HPP

#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "classgroup.hpp"
#include "k3.hpp"
#include "moduli.hpp"

namespace k3moduli::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* version = "1.0.0";

inline Json to_json(const QuadForm& q) { return Json::array({q.a, q.b, q.c}); }
inline Json to_json(const FormClass& c) { return to_json(c.rep()); }
inline Json to_json(const Gram& g) { return Json::array({Json::array({g[0][0], g[0][1]}), Json::array({g[1][0], g[1][1]})}); }

inline Json to_json(const std::vector<mpz_class>& poly)
{
    Json out = Json::array();
    for (const auto& c : poly)
        out.push_back(c.get_str());
    return out;
}

inline Json to_json(const std::vector<KNumber>& poly, Int d_K)
{
    Json out = Json::array();
    for (const auto& c : poly)
        out.push_back(to_string(c, d_K));
    return out;
}

inline Json lattice_json(const TranscLattice& t)
{
    Json j;
    j["gram"] = to_json(t.canonical_gram());
    j["m"] = t.m();
    j["q0"] = to_json(t.q0());
    j["disc"] = t.disc();
    j["disc0"] = t.disc0();
    return j;
}

inline Json classes_json(const ClassGroup& g, const IndexSet& idx)
{
    Json out = Json::array();
    for (ClassIndex i : idx)
        out.push_back(to_json(g[i]));
    return out;
}

inline Json envelope(const std::string& command, Json input, Json result, const std::vector<std::string>& warnings = {})
{
    Json e;
    e["command"] = command;
    e["version"] = version;
    e["input"] = std::move(input);
    e["result"] = std::move(result);
    e["warnings"] = warnings;
    return e;
}

inline Json gram_input(const Gram& g, std::optional<int> digits)
{
    Json in;
    in["gram"] = to_json(g);
    if (digits)
        in["digits"] = *digits;
    return in;
}

/// `analyze`: the full moduli report. `lattice` echoes the parsed input
/// together with its conjugate orbit; everything else depends only on the
/// primitive part.
inline Json cmd_analyze(const Gram& gram, std::optional<int> digits)
{
    TranscLattice t = TranscLattice::from_gram(gram);
    ModuliReport r = moduli_report(t, digits);
    Json lat = lattice_json(t);
    Json orbit = Json::array();
    for (const auto& o : r.orbit)
        orbit.push_back(to_json(o.canonical_gram()));
    lat["orbit"] = std::move(orbit);

    Json res;
    res["lattice"] = std::move(lat);
    res["d_K"] = r.d_K;
    res["h"] = r.h;
    res["g"] = r.g;
    res["elementary_divisors"] = r.elementary_divisors;
    res["two_torsion_size"] = r.two_torsion_size;
    res["degree_MK_over_K"] = r.degree_MK_over_K;
    res["degree_MQ_over_Q"] = r.degree_MQ_over_Q;
    res["MQ_is_galois"] = r.MQ_is_galois;
    res["class_polynomial"] = to_json(r.class_polynomial);
    res["MK_min_poly"] = to_json(r.MK_min_poly, r.d_K);
    res["MQ_min_poly"] = to_json(r.MQ_min_poly);
    res["MK_resolvent_level"] = r.MK_resolvent_level;
    res["MQ_resolvent_level"] = r.MQ_resolvent_level;
    res["MQ_generator"] = r.MQ_uses_fixed_coset ? "coset_trace" : "twisted_coset_trace";
    res["precision_used"] = r.precision_used;
    return envelope("analyze", gram_input(gram, digits), std::move(res), r.warnings);
}

inline Json cmd_classgroup(Int disc)
{
    ClassGroup g = enumerate(disc);
    GenusPartition gp = genus_partition(g);
    IndexSet all(g.size());
    for (ClassIndex i = 0; i < g.size(); ++i)
        all[i] = i;

    Json res;
    res["disc"] = disc;
    res["h"] = g.size();
    res["classes"] = classes_json(g, all);
    res["elementary_divisors"] = structure(g);
    res["two_torsion"] = classes_json(g, two_torsion(g));
    res["principal_genus"] = classes_json(g, gp.principal_genus);
    Json genera = Json::array();
    for (const auto& c : gp.cosets)
        genera.push_back(classes_json(g, c));
    res["genera"] = std::move(genera);
    res["genus_count"] = gp.cosets.size();
    res["genus_order"] = genus_order(g);
    res["cayley"] = g.cayley();
    Json in;
    in["disc"] = disc;
    return envelope("classgroup", std::move(in), std::move(res));
}

inline Json cmd_orbit(const Gram& gram)
{
    TranscLattice t = TranscLattice::from_gram(gram);
    ClassGroup g = enumerate(t.disc0());
    Json orbit = Json::array();
    for (const auto& o : galois_orbit(t, g))
        orbit.push_back(lattice_json(o));
    Json res;
    res["lattice"] = lattice_json(t);
    res["genus_order"] = genus_order(g);
    res["orbit"] = std::move(orbit);
    return envelope("orbit", gram_input(gram, std::nullopt), std::move(res));
}

inline Json cmd_classpoly(Int disc, std::optional<int> digits)
{
    ClassPolynomial p = class_polynomial(disc, digits);
    std::size_t real = 0;
    for (const auto& r : p.roots)
        if (r.im.is_zero() || r.im.abs().log10_abs() < -(p.digits / 2))
            ++real;
    Json res;
    res["disc"] = disc;
    res["degree"] = p.coeffs.size() - 1;
    res["coefficients"] = to_json(p.coeffs);
    res["real_roots"] = real;
    res["complex_pairs"] = (p.roots.size() - real) / 2;
    res["precision_used"] = p.digits;
    Json in;
    in["disc"] = disc;
    if (digits)
        in["digits"] = *digits;
    std::vector<std::string> warnings;
    if (digits && p.digits != *digits)
        warnings.push_back("precision raised from " + std::to_string(*digits) + " to " + std::to_string(p.digits) + " digits");
    return envelope("classpoly", std::move(in), std::move(res), warnings);
}

/// `enumerate`: discriminants in ascending |D| with h(D) <= max_h. Unless
/// `primitive_only`, each entry also lists the imprimitive lattices m*Q0
/// of the same discriminant, grouped by m.
inline Json cmd_enumerate(Int max_disc, Int max_h, bool primitive_only)
{
    if (max_disc <= 0 || max_h <= 0)
        throw std::invalid_argument("k3moduli: bounds must be positive");
    Json entries = Json::array();
    for (Int n = 3; n <= max_disc; ++n) {
        const Int disc = -n;
        if (!arith::is_valid_negative_disc(disc))
            continue;
        ClassGroup g = enumerate(disc);
        if (static_cast<Int>(g.size()) > max_h)
            continue;
        QuadOrder o = order_of_disc(disc);
        Json e;
        e["disc"] = disc;
        e["d_K"] = o.d_K;
        e["f"] = o.f;
        e["h"] = g.size();
        e["genus_count"] = two_torsion(g).size();
        e["g"] = genus_order(g);
        if (!primitive_only) {
            Json imprimitive = Json::array();
            std::size_t total = g.size();
            for (Int m = 2; m * m <= n; ++m) {
                if (n % (m * m) != 0 || !arith::is_valid_negative_disc(disc / (m * m)))
                    continue;
                ClassGroup g0 = enumerate(disc / (m * m));
                Json s;
                s["m"] = m;
                s["disc0"] = disc / (m * m);
                s["h0"] = g0.size();
                s["g"] = genus_order(g0);
                imprimitive.push_back(std::move(s));
                total += g0.size();
            }
            e["imprimitive"] = std::move(imprimitive);
            e["lattice_count"] = total;
        }
        entries.push_back(std::move(e));
    }
    Json in;
    in["max_disc"] = max_disc;
    in["max_h"] = max_h;
    in["primitive_only"] = primitive_only;
    Json res;
    res["count"] = entries.size();
    res["entries"] = std::move(entries);
    return envelope("enumerate", std::move(in), std::move(res));
}

namespace detail {

inline std::string scalar_text(const Json& v)
{
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

inline void text_lines(std::ostringstream& os, const std::string& key, const Json& v, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (v.is_object()) {
        os << pad << key << ":\n";
        for (auto it = v.begin(); it != v.end(); ++it)
            text_lines(os, it.key(), it.value(), indent + 2);
        return;
    }
    if (v.is_array() && !v.empty() && v.front().is_object()) {
        os << pad << key << ":\n";
        std::size_t k = 0;
        for (const auto& item : v)
            text_lines(os, "[" + std::to_string(k++) + "]", item, indent + 2);
        return;
    }
    os << pad << std::left << std::setw(std::max(0, 24 - indent)) << key << " " << scalar_text(v) << "\n";
}

} // namespace detail

/// Fixed-width rendering of an envelope.
inline std::string render_text(const Json& envelope)
{
    std::ostringstream os;
    for (auto it = envelope.begin(); it != envelope.end(); ++it)
        detail::text_lines(os, it.key(), it.value(), 0);
    return os.str();
}

} // namespace k3moduli::report

#endif
