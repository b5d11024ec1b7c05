#include "passcov/design.hpp"

#include "passcov/errors.hpp"

namespace passcov {

int radiation_param_count(const RadiationSpec& spec, int n) {
    switch (spec.model) {
    case RadiationModel::General: return n;
    case RadiationModel::Proportional: return 1;
    case RadiationModel::Equal: return 1;
    }
    throw ParamOutOfRange("radiation_param_count: unknown model");
}

namespace {

void append_radiation(const RadiationSpec& spec, int n, std::vector<double>& out) {
    switch (spec.model) {
    case RadiationModel::General:
        if (static_cast<int>(spec.delta.size()) != n)
            throw LengthMismatch("flatten_design: general spec needs one delta per PA");
        out.insert(out.end(), spec.delta.begin(), spec.delta.end());
        return;
    case RadiationModel::Proportional:
        out.push_back(spec.delta_sq);
        return;
    case RadiationModel::Equal:
        out.push_back(spec.rho > 0.0 ? spec.rho : 1.0 / n);
        return;
    }
    throw ParamOutOfRange("flatten_design: unknown model");
}

std::size_t read_radiation(RadiationSpec& spec, int n, const std::vector<double>& v,
                           std::size_t at) {
    switch (spec.model) {
    case RadiationModel::General:
        spec.delta.assign(v.begin() + static_cast<std::ptrdiff_t>(at),
                          v.begin() + static_cast<std::ptrdiff_t>(at) + n);
        return at + static_cast<std::size_t>(n);
    case RadiationModel::Proportional:
        spec.delta_sq = v[at];
        return at + 1;
    case RadiationModel::Equal:
        spec.rho = v[at];
        return at + 1;
    }
    throw ParamOutOfRange("unflatten_design: unknown model");
}

} // namespace

std::vector<double> flatten_design(const DesignPoint& d) {
    std::vector<double> v;
    const int nc = static_cast<int>(d.x_c.size());
    const int nj = static_cast<int>(d.x_j.size());
    v.reserve(2 + d.x_c.size() + d.x_j.size() + 2 * 8);
    v.push_back(d.p_c);
    v.push_back(d.p_j_max);
    append_radiation(d.rad_c, nc, v);
    append_radiation(d.rad_j, nj, v);
    v.insert(v.end(), d.x_c.begin(), d.x_c.end());
    v.insert(v.end(), d.x_j.begin(), d.x_j.end());
    return v;
}

DesignPoint unflatten_design(const DesignPoint& like, const std::vector<double>& v) {
    const int nc = static_cast<int>(like.x_c.size());
    const int nj = static_cast<int>(like.x_j.size());
    const std::size_t want = 2 +
        static_cast<std::size_t>(radiation_param_count(like.rad_c, nc)) +
        static_cast<std::size_t>(radiation_param_count(like.rad_j, nj)) +
        like.x_c.size() + like.x_j.size();
    if (v.size() != want)
        throw LengthMismatch("unflatten_design: wrong coordinate count");
    DesignPoint d = like;
    d.p_c = v[0];
    d.p_j_max = v[1];
    std::size_t at = 2;
    at = read_radiation(d.rad_c, nc, v, at);
    at = read_radiation(d.rad_j, nj, v, at);
    d.x_c.assign(v.begin() + static_cast<std::ptrdiff_t>(at),
                 v.begin() + static_cast<std::ptrdiff_t>(at) + nc);
    at += static_cast<std::size_t>(nc);
    d.x_j.assign(v.begin() + static_cast<std::ptrdiff_t>(at),
                 v.begin() + static_cast<std::ptrdiff_t>(at) + nj);
    return d;
}

std::vector<std::string> design_labels(const DesignPoint& d) {
    std::vector<std::string> names{"p_c", "p_j_max"};
    auto rad_names = [](const RadiationSpec& spec, int n, const std::string& tag,
                        std::vector<std::string>& out) {
        switch (spec.model) {
        case RadiationModel::General:
            for (int i = 0; i < n; ++i)
                out.push_back("delta_" + tag + "_" + std::to_string(i + 1));
            return;
        case RadiationModel::Proportional:
            out.push_back("delta_sq_" + tag);
            return;
        case RadiationModel::Equal:
            out.push_back("rho_" + tag);
            return;
        }
    };
    rad_names(d.rad_c, static_cast<int>(d.x_c.size()), "c", names);
    rad_names(d.rad_j, static_cast<int>(d.x_j.size()), "j", names);
    for (std::size_t i = 0; i < d.x_c.size(); ++i)
        names.push_back("x_c_" + std::to_string(i + 1));
    for (std::size_t i = 0; i < d.x_j.size(); ++i)
        names.push_back("x_j_" + std::to_string(i + 1));
    return names;
}

} // namespace passcov
