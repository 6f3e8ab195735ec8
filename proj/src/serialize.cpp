#include "hankel/serialize.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

namespace hankel {

Json complex_to_json(const Complex& z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("re") || !j.contains("im"))
        throw Error(ErrorCode::InvalidArgument, "complex value needs {re, im}");
    return Complex(j.at("re").get<double>(), j.at("im").get<double>());
}

Json measure_to_json(const SpectralMeasure& m) {
    Json atoms = Json::array();
    for (const Atom& a : m.atoms()) atoms.push_back(Json{{"s", a.s}, {"w", a.w}});
    return Json{{"atoms", atoms}, {"tol", m.tol()}};
}

SpectralMeasure measure_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("atoms"))
        throw Error(ErrorCode::InvalidArgument, "measure JSON needs an atoms array");
    std::vector<Atom> atoms;
    for (const Json& a : j.at("atoms"))
        atoms.push_back({a.at("s").get<double>(), a.at("w").get<double>()});
    const double tol = j.value("tol", 1e-12);
    return SpectralMeasure::validate(std::move(atoms), tol);
}

Json datum_to_json(const SpectralDatum& d) {
    Json psi = Json::array();
    for (int k = 0; k < d.psi.size(); ++k) psi.push_back(complex_to_json(d.psi[k]));
    Json psit = Json::array();
    for (int k = 0; k < d.psi_tilde.size(); ++k) psit.push_back(complex_to_json(d.psi_tilde[k]));
    return Json{{"rho", measure_to_json(d.rho)}, {"psi", psi}, {"psi_tilde", psit}};
}

SpectralDatum datum_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("rho") || !j.contains("psi"))
        throw Error(ErrorCode::InvalidArgument, "datum JSON needs rho and psi");
    SpectralMeasure rho = measure_from_json(j.at("rho"));
    const Json& psi_arr = j.at("psi");
    CVec psi(psi_arr.size());
    for (size_t k = 0; k < psi_arr.size(); ++k) psi[k] = complex_from_json(psi_arr[k]);
    CVec psit(0);
    if (j.contains("psi_tilde")) {
        const Json& pt = j.at("psi_tilde");
        psit = CVec(pt.size());
        for (size_t k = 0; k < pt.size(); ++k) psit[k] = complex_from_json(pt[k]);
    }
    SpectralDatum d{std::move(rho), std::move(psi), std::move(psit)};
    d.check_unimodular();
    return d;
}

Json symbol_to_json(const HankelSymbol& u) {
    Json coeffs = Json::array();
    for (int k = 0; k < u.coeffs.size(); ++k) coeffs.push_back(complex_to_json(u.coeffs[k]));
    return Json{{"coeffs", coeffs}};
}

HankelSymbol symbol_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("coeffs"))
        throw Error(ErrorCode::InvalidArgument, "symbol JSON needs a coeffs array");
    const Json& arr = j.at("coeffs");
    if (arr.empty()) throw Error(ErrorCode::InvalidArgument, "symbol needs coefficients");
    HankelSymbol u;
    u.coeffs = CVec(arr.size());
    for (size_t k = 0; k < arr.size(); ++k) u.coeffs[k] = complex_from_json(arr[k]);
    return u;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
    out << content;
}

void dump_matrix(const std::string& path, const CMat& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            const double re = m(i, j).real(), im = m(i, j).imag();
            out.write(reinterpret_cast<const char*>(&re), sizeof(double));
            out.write(reinterpret_cast<const char*>(&im), sizeof(double));
        }
}

}  // namespace hankel
