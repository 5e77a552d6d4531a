#include "crs/model.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace crs {

CrsProblem::CrsProblem(SymmetricOperator a, Vector rhs, double rho_)
    : A(std::move(a)), b(std::move(rhs)), rho(rho_) {
    if (!(rho > 0.0)) throw std::invalid_argument("CrsProblem: rho must be > 0");
    vec::check_dim(A.dim(), b.size(), "CrsProblem");
}

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::SP: return "sp";
        case Variant::AP: return "ap";
        case Variant::EXACT: return "exact";
    }
    return "?";
}

Variant variant_from_name(const std::string& name) {
    if (name == "sp" || name == "SP") return Variant::SP;
    if (name == "ap" || name == "AP") return Variant::AP;
    if (name == "exact" || name == "EXACT") return Variant::EXACT;
    throw std::invalid_argument("unknown variant: " + name);
}

SurrogateSpec make_surrogate(Variant variant, double theta, double epsilon, double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("make_surrogate: rho must be > 0");
    SurrogateSpec spec;
    spec.variant = variant;
    spec.theta = theta;
    spec.epsilon = epsilon;
    if (theta >= 0.0) {
        spec.shift = 0.0;  // numerically PSD: plain lifted problem over S
        spec.lower_bound = 0.0;
        return spec;
    }
    switch (variant) {
        case Variant::SP:
            if (!(epsilon > 0.0))
                throw std::invalid_argument("make_surrogate: SP needs epsilon > 0");
            spec.shift = -theta + epsilon;
            break;
        case Variant::AP:
        case Variant::EXACT:
            spec.shift = -theta;
            break;
    }
    spec.lower_bound = (spec.shift / rho) * (spec.shift / rho);
    return spec;
}

double f1_value(const CrsProblem& prob, const Vector& x) {
    vec::check_dim(prob.dim(), x.size(), "f1_value");
    const Vector ax = prob.A.apply(x);
    const double nx = vec::norm(x);
    return 0.5 * vec::dot(x, ax) + vec::dot(prob.b, x) + prob.rho / 3.0 * nx * nx * nx;
}

Vector f1_grad(const CrsProblem& prob, const Vector& x) {
    vec::check_dim(prob.dim(), x.size(), "f1_grad");
    Vector g = prob.A.apply(x);
    const double nx = vec::norm(x);
    for (std::size_t i = 0; i < x.size(); ++i) g[i] += prob.b[i] + prob.rho * nx * x[i];
    return g;
}

ValueGrad f1_value_grad(const CrsProblem& prob, const Vector& x) {
    vec::check_dim(prob.dim(), x.size(), "f1_value_grad");
    const Vector ax = prob.A.apply(x);
    const double nx = vec::norm(x);
    ValueGrad out;
    out.value = 0.5 * vec::dot(x, ax) + vec::dot(prob.b, x) + prob.rho / 3.0 * nx * nx * nx;
    out.grad = ax;
    for (std::size_t i = 0; i < x.size(); ++i)
        out.grad[i] += prob.b[i] + prob.rho * nx * x[i];
    return out;
}

LiftedValueGrad lifted_value_grad(const CrsProblem& prob, const SurrogateSpec& spec,
                                  const LiftedPoint& p) {
    vec::check_dim(prob.dim(), p.x.size(), "lifted_value_grad");
    if (p.y < 0.0) throw std::domain_error("lifted_value_grad: y must be >= 0");

    const double s = spec.shift;
    const Vector ax = prob.A.apply(p.x);
    const double sqrt_y = std::sqrt(p.y);

    LiftedValueGrad out;
    out.value = 0.5 * (vec::dot(p.x, ax) + s * vec::norm_sq(p.x)) + vec::dot(prob.b, p.x) +
                prob.rho / 3.0 * p.y * sqrt_y - 0.5 * s * p.y;
    out.grad.x = ax;
    for (std::size_t i = 0; i < p.x.size(); ++i)
        out.grad.x[i] += s * p.x[i] + prob.b[i];
    out.grad.y = 0.5 * prob.rho * sqrt_y - 0.5 * s;
    return out;
}

double lipschitz_gamma(const CrsProblem& prob, const SurrogateSpec& spec) {
    if (!(spec.lower_bound > 0.0))
        throw std::invalid_argument(
            "lipschitz_gamma: lower_bound must be > 0 (gradient is not Lipschitz at y = 0)");
    const double shifted_bound = prob.A.shifted(spec.shift).norm_upper_bound();
    return std::max(shifted_bound, prob.rho / (4.0 * std::sqrt(spec.lower_bound)));
}

// ---------------------------------------------------------------------------
// Manifest serialization
// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

CrsProblem load_problem(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw std::runtime_error("cannot open manifest: " + manifest_path);
    std::string matrix, rhs, line;
    double rho = 0.0;
    bool have_rho = false;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(manifest_path + ": expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "matrix") {
            matrix = value;
        } else if (key == "rhs") {
            rhs = value;
        } else if (key == "rho") {
            rho = std::stod(value);
            have_rho = true;
        } else {
            throw std::runtime_error(manifest_path + ": unknown key '" + key + "'");
        }
    }
    if (matrix.empty() || rhs.empty() || !have_rho)
        throw std::runtime_error(manifest_path + ": manifest needs matrix, rhs and rho");

    const auto base = std::filesystem::path(manifest_path).parent_path();
    const auto resolve = [&](const std::string& p) {
        std::filesystem::path fp(p);
        return (fp.is_absolute() ? fp : base / fp).string();
    };
    const std::string mpath = resolve(matrix);
    SymmetricOperator A = mpath.size() >= 4 && mpath.substr(mpath.size() - 4) == ".mtx"
                              ? load_matrix_market(mpath)
                              : load_dense_text(mpath);
    return CrsProblem(std::move(A), load_vector_text(resolve(rhs)), rho);
}

void save_problem(const CrsProblem& prob, const std::string& manifest_path,
                  const std::string& matrix_path, const std::string& rhs_path) {
    save_matrix_market(prob.A, matrix_path);
    save_vector_text(prob.b, rhs_path);
    std::ofstream out(manifest_path);
    if (!out) throw std::runtime_error("cannot write manifest: " + manifest_path);
    out << "matrix = " << std::filesystem::path(matrix_path).filename().string() << "\n";
    out << "rhs = " << std::filesystem::path(rhs_path).filename().string() << "\n";
    out.precision(17);
    out << "rho = " << prob.rho << "\n";
}

}  // namespace crs
