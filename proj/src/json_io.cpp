#include "carlitz/json_io.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace carlitz {
namespace {

/// theta-exponent a/(q-1) for the w-exponent e (a = -e), reduced.
std::string theta_exp_str(std::int64_t e, std::int64_t qm1) {
    std::int64_t num = -e;
    std::int64_t den = qm1;
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

std::string term_str(std::int64_t e, FqElem c, std::int64_t qm1) {
    const std::string ex = theta_exp_str(e, qm1);
    if (ex == "0") return std::to_string(static_cast<int>(c));
    std::string out;
    if (c != 1) out = std::to_string(static_cast<int>(c)) + "*";
    out += "th^(" + ex + ")";
    return out;
}

} // namespace

Json series_json(const LaurentSeries& s) {
    const FqPtr& f = s.field();
    Json coeffs = Json::array();
    for (const auto& [e, c] : s.nonzero_terms())
        coeffs.push_back(Json::array({e, static_cast<int>(c)}));
    Json out;
    out["q"] = f->q();
    out["p"] = f->p();
    out["m"] = f->m();
    out["w_def"] = "(-theta)^(-1/(q-1))";
    out["val"] = s.val();
    out["prec"] = s.prec();
    out["sector"] = s.sector();
    out["coeffs"] = std::move(coeffs);
    return out;
}

Json tate_json(const TateElem& t) {
    Json coeffs = Json::array();
    for (std::int64_t r = 0; r <= t.tdeg(); ++r) coeffs.push_back(series_json(t.coeff(r)));
    Json out;
    out["tdeg"] = t.tdeg();
    out["coeffs"] = std::move(coeffs);
    if (t.bound()) {
        Json tail = Json::array();
        for (std::int64_t r = t.tdeg() + 1; r <= t.tdeg() + 32; ++r) {
            const std::int64_t v = std::min(t.bound()->eval(r), ValBound::kInf);
            tail.push_back(Json::array({r, v}));
        }
        out["tail_bound"] = std::move(tail);
    } else {
        out["tail_bound"] = nullptr;
    }
    return out;
}

Json atpoly_json(const ATPoly& a) {
    const int dt = std::max(0, a.h.deg_t());
    const int dth = std::max(0, a.h.deg_theta());
    Json matrix = Json::array();
    for (int r = 0; r <= dt; ++r) {
        Json row = Json::array();
        const FqPoly c = a.h.coeff(r);
        for (int k = 0; k <= dth; ++k)
            row.push_back(static_cast<int>(c.coeff(static_cast<std::size_t>(k))));
        matrix.push_back(std::move(row));
    }
    Json out;
    out["n"] = a.n;
    out["unique"] = a.unique;
    out["fitted_to"] = a.fitted_to;
    out["verified_to"] = a.verified_to;
    Json h;
    h["deg_t"] = a.h.deg_t();
    h["deg_theta"] = a.h.deg_theta();
    h["matrix"] = std::move(matrix);
    out["h"] = std::move(h);
    return out;
}

Json certificate_json(const RelationCertificate& c) {
    Json out;
    out["kind"] = c.kind;
    out["D"] = c.degree_bound;
    out["N"] = c.prec;
    out["targets"] = c.labels;
    if (c.kernel.empty()) {
        out["kernel"] = nullptr;
    } else {
        Json kernel = Json::array();
        for (const auto& vec : c.kernel) {
            Json row = Json::array();
            for (const FqPoly& p : vec) row.push_back(p.to_string());
            kernel.push_back(std::move(row));
        }
        out["kernel"] = std::move(kernel);
    }
    Json conf = Json::array();
    for (const Confirmation& k : c.confirmations)
        conf.push_back(Json::array({k.vector_index, k.residual_val}));
    out["confirmations"] = std::move(conf);
    return out;
}

Json motive_report_json(const VerificationReport& r) {
    Json out;
    out["status"] = to_string(r.status);
    out["window"] = Json::array({Json::array({0, r.tdeg_checked}), r.prec_checked});
    Json entries = Json::array();
    for (const EntryReport& e : r.entries)
        entries.push_back(Json::array({e.i, e.j, to_string(e.status)}));
    out["entries"] = std::move(entries);
    Json det;
    det["ok"] = r.det.ok;
    det["exponent"] = r.det.exponent;
    det["unit"] = static_cast<int>(r.det.unit);
    out["det"] = std::move(det);
    return out;
}

Json check_json(const CheckOutcome& o) {
    Json out;
    out["name"] = o.name;
    out["status"] = o.status;
    out["detail"] = o.detail;
    out["checked_to"] = o.checked_to;
    return out;
}

Json chang_json(const ChangReport& r) {
    Json out;
    out["match"] = r.match;
    out["checked_to"] = r.checked_to;
    out["lhs"] = series_json(r.lhs);
    out["rhs"] = series_json(r.rhs);
    return out;
}

std::string series_text(const LaurentSeries& s, std::size_t max_terms) {
    const std::int64_t qm1 = static_cast<std::int64_t>(s.field()->q()) - 1;
    const auto terms = s.nonzero_terms();
    std::ostringstream os;
    if (terms.empty()) {
        os << "0";
    } else {
        for (std::size_t k = 0; k < terms.size() && k < max_terms; ++k) {
            if (k > 0) os << " + ";
            os << term_str(terms[k].first, terms[k].second, qm1);
        }
        if (terms.size() > max_terms)
            os << " + (" << terms.size() - max_terms << " more terms)";
    }
    os << " + O(th^(" << theta_exp_str(s.prec(), qm1) << "))";
    return os.str();
}

std::string tate_text(const TateElem& t, std::size_t max_terms) {
    std::ostringstream os;
    for (std::int64_t r = 0; r <= t.tdeg(); ++r) {
        os << "t^" << r << ": " << series_text(t.coeff(r), max_terms);
        if (r < t.tdeg()) os << "\n";
    }
    return os.str();
}

} // namespace carlitz
