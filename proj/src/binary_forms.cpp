#include "cuspcensus/error.hpp"
#include "cuspcensus/qforms.hpp"

#include <algorithm>
#include <numeric>

namespace cuspcensus::qforms {

bool BinaryForm::is_reduced() const
{
    const std::int64_t abs_b = b < 0 ? -b : b;
    if (!(abs_b <= a && a <= c)) {
        return false;
    }
    if ((abs_b == a || a == c) && b < 0) {
        return false;
    }
    return true;
}

bool BinaryForm::is_primitive() const { return std::gcd(std::gcd(a, b), c) == 1; }

namespace {

std::int64_t floor_div(std::int64_t n, std::int64_t d)
{
    std::int64_t q = n / d;
    if ((n % d != 0) && ((n < 0) != (d < 0))) {
        --q;
    }
    return q;
}

} // namespace

BinaryForm reduce_binary(BinaryForm f)
{
    const std::int64_t disc = f.discriminant();
    if (f.a <= 0 || disc >= 0) {
        throw InputError("binary reduction needs a positive definite form");
    }
    for (;;) {
        // Translate b into (-a, a] with x -> x + k y.
        if (f.b > f.a || f.b <= -f.a) {
            const std::int64_t k = floor_div(f.a - f.b, 2 * f.a);
            f.b += 2 * k * f.a;
            f.c = (f.b * f.b - disc) / (4 * f.a);
        }
        if (f.a > f.c) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        if (f.a == f.c && f.b < 0) {
            f.b = -f.b;
        }
        return f;
    }
}

namespace {

void check_discriminant(std::int64_t d)
{
    const std::int64_t r = ((d % 4) + 4) % 4;
    if (d >= 0 || (r != 0 && r != 1)) {
        throw InputError("discriminant " + std::to_string(d) + " must be negative and 0 or 1 mod 4");
    }
}

} // namespace

std::vector<BinaryForm> reduced_forms(std::int64_t d)
{
    check_discriminant(d);
    std::vector<BinaryForm> out;
    // a <= sqrt(|d| / 3) for reduced forms.
    for (std::int64_t a = 1; 3 * a * a <= -d; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            const std::int64_t num = b * b - d;
            if (num % (4 * a) != 0) {
                continue;
            }
            const BinaryForm f{a, b, num / (4 * a)};
            if (f.is_reduced() && f.is_primitive()) {
                out.push_back(f);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t class_number(std::int64_t d) { return static_cast<std::int64_t>(reduced_forms(d).size()); }

} // namespace cuspcensus::qforms
