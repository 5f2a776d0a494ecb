#include "ealab/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

namespace ealab {

std::optional<Rat> parse_rational(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) return std::nullopt;

    auto parse_int = [](const std::string& t, long long& out) -> bool {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
        if (i == t.size()) return false;
        for (std::size_t k = i; k < t.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(t[k]))) return false;
        errno = 0;
        char* end = nullptr;
        long long v = std::strtoll(t.c_str(), &end, 10);
        if (errno != 0 || end != t.c_str() + t.size()) return false;
        out = v;
        return true;
    };

    if (auto slash = s.find('/'); slash != std::string::npos) {
        long long num = 0, den = 0;
        if (!parse_int(s.substr(0, slash), num)) return std::nullopt;
        if (!parse_int(s.substr(slash + 1), den)) return std::nullopt;
        if (den == 0) return std::nullopt;
        return Rat(num, den);
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string ipart = s.substr(0, dot), fpart = s.substr(dot + 1);
        bool neg = !ipart.empty() && ipart[0] == '-';
        if (!ipart.empty() && (ipart[0] == '+' || ipart[0] == '-')) ipart.erase(0, 1);
        if (ipart.empty() && fpart.empty()) return std::nullopt;
        if (ipart.empty()) ipart = "0";
        long long iv = 0;
        if (!parse_int(ipart, iv)) return std::nullopt;
        if (fpart.size() > 15) return std::nullopt;  // would overflow the denominator
        long long fv = 0, den = 1;
        if (!fpart.empty()) {
            if (!parse_int(fpart, fv)) return std::nullopt;
            for (std::size_t k = 0; k < fpart.size(); ++k) den *= 10;
        }
        Rat r = Rat(iv) + Rat(fv, den);
        return neg ? -r : r;
    }
    long long v = 0;
    if (!parse_int(s, v)) return std::nullopt;
    return Rat(v);
}

std::string to_string(const Rat& r) {
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1) os << '/' << r.denominator();
    return os.str();
}

RatMat3 rat_identity() {
    RatMat3 a{};
    for (int i = 0; i < 3; ++i) a[i][i] = Rat(1);
    return a;
}

RatMat3 rat_mul(const RatMat3& a, const RatMat3& b) {
    RatMat3 out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Rat acc(0);
            for (int k = 0; k < 3; ++k) acc += a[i][k] * b[k][j];
            out[i][j] = acc;
        }
    return out;
}

RatVec3 rat_mul(const RatMat3& a, const RatVec3& v) {
    RatVec3 out{};
    for (int i = 0; i < 3; ++i) {
        Rat acc(0);
        for (int k = 0; k < 3; ++k) acc += a[i][k] * v[k];
        out[i] = acc;
    }
    return out;
}

RatMat3 rat_transpose(const RatMat3& a) {
    RatMat3 out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[i][j] = a[j][i];
    return out;
}

Rat rat_det(const RatMat3& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

RatMat3 rat_inverse(const RatMat3& a) {
    Rat d = rat_det(a);
    if (d == Rat(0)) throw SingularMatrixError("exact 3x3 inverse: determinant is zero");
    RatMat3 adj{};
    adj[0][0] = a[1][1] * a[2][2] - a[1][2] * a[2][1];
    adj[0][1] = a[0][2] * a[2][1] - a[0][1] * a[2][2];
    adj[0][2] = a[0][1] * a[1][2] - a[0][2] * a[1][1];
    adj[1][0] = a[1][2] * a[2][0] - a[1][0] * a[2][2];
    adj[1][1] = a[0][0] * a[2][2] - a[0][2] * a[2][0];
    adj[1][2] = a[0][2] * a[1][0] - a[0][0] * a[1][2];
    adj[2][0] = a[1][0] * a[2][1] - a[1][1] * a[2][0];
    adj[2][1] = a[0][1] * a[2][0] - a[0][0] * a[2][1];
    adj[2][2] = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) adj[i][j] /= d;
    return adj;
}

}  // namespace ealab
