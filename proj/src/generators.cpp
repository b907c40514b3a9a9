#include "gdmatch/generators.hpp"

#include "gdmatch/errors.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace gdm {

Instance tightness_instance(std::size_t m, Variant variant)
{
    if (m < 2 || m % 2 != 0) throw InputError("tightness instance needs an even m >= 2, got " + std::to_string(m));

    const Scalar eps = Scalar::rational(1, m);
    auto metric = Metric::matrix({{Scalar(0), Scalar(2)}, {Scalar(2), Scalar(0)}});

    std::vector<Request> requests;
    requests.reserve(2 * m);
    for (std::size_t j = 1; j <= m; ++j) {
        Scalar t = j == 1 ? Scalar(0) : Scalar(1) + Scalar(static_cast<int>(2 * j - 3)) * eps;
        int at_p = 0;
        if (variant == Variant::mbpmd) at_p = j % 2 == 1 ? 1 : -1;
        requests.push_back({0, Point::matrix(0), t, at_p});
        requests.push_back({0, Point::matrix(1), t, -at_p});
    }
    return Instance(variant, NumericMode::exact, std::move(metric), std::move(requests));
}

Instance ring_instance(std::size_t m, RingHalf first_half)
{
    if (m < 6 || m % 2 != 0) throw InputError("ring instance needs an even m >= 6, got " + std::to_string(m));

    auto metric = Metric::ring(Scalar(1));
    mpz_class pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, m - 1);
    const Scalar eps(mpq_class(mpz_class(1), mpz_class(m) * pow2));

    // The covered part of the ring is the clockwise arc [start, end] (end may exceed 1).
    Scalar start = first_half == RingHalf::clockwise ? Scalar(0) : Scalar::rational(1, 2);
    Scalar end = start + Scalar::rational(1, 2);

    std::vector<Scalar> positions{Scalar(0), Scalar::rational(1, 2)};
    std::vector<Request> requests;
    requests.push_back({0, metric.ring_point(positions[0]), Scalar(0), 0});
    requests.push_back({0, metric.ring_point(positions[1]), Scalar(0), 0});
    for (std::size_t j = 3; j <= m / 2; ++j) {
        Scalar mid = (end + start + Scalar(1)) / Scalar(2);
        // Both tree leaves are equidistant from the midpoint; the tree grows at `end`.
        end = mid;
        positions.push_back(mid);
        Scalar t = Scalar(static_cast<int>(2 * (j - 1))) / Scalar(static_cast<int>(m)) * eps;
        requests.push_back({0, metric.ring_point(mid), t, 0});
    }
    for (const Scalar& pos : positions) requests.push_back({0, metric.ring_point(pos), eps, 0});

    const Point p = metric.ring_point(start);
    const Point q = metric.ring_point(end);
    for (std::size_t k = 1; k <= m / 2; ++k) {
        Scalar t = eps * Scalar(static_cast<int>(1 + k));
        requests.push_back({0, p, t, 0});
        requests.push_back({0, q, t, 0});
    }
    return Instance(Variant::mpmd, NumericMode::exact, std::move(metric), std::move(requests));
}

namespace {

class Draw {
public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t below(std::uint64_t n) { return rng_() % n; }

    Scalar rational(long max, unsigned long resolution)
    {
        auto steps = static_cast<std::uint64_t>(max) * resolution + 1;
        return Scalar::rational(static_cast<long>(below(steps)), resolution);
    }

    Scalar real(long max) { return Scalar(static_cast<double>(rng_() >> 11) * 0x1.0p-53 * static_cast<double>(max)); }

    template <typename T>
    void shuffle(std::vector<T>& v)
    {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 rng_;
};

} // namespace

Instance random_instance(const RandomSpec& spec)
{
    if (spec.m < 1) throw InputError("random instance needs m >= 1");
    if (spec.horizon < 0 || spec.spread < 0 || spec.resolution == 0) throw InputError("random instance parameters must be nonnegative with a positive resolution");

    Draw draw(spec.seed);
    const std::size_t n = 2 * spec.m;
    const bool floating = spec.metric == MetricKind::euclidean;
    const NumericMode mode = floating ? NumericMode::floating : NumericMode::exact;
    auto coordinate = [&] { return floating ? draw.real(spec.spread) : draw.rational(spec.spread, spec.resolution); };

    Metric metric = Metric::line();
    std::size_t matrix_points = 0;
    switch (spec.metric) {
    case MetricKind::line: break;
    case MetricKind::euclidean: metric = Metric::euclidean(); break;
    case MetricKind::ring: metric = Metric::ring(Scalar(static_cast<int>(std::max<long>(spec.spread, 1)))); break;
    case MetricKind::matrix: {
        // L1 distances between grid points always satisfy the metric axioms.
        matrix_points = std::max<std::size_t>(2, spec.m);
        std::vector<std::pair<Scalar, Scalar>> grid;
        for (std::size_t i = 0; i < matrix_points; ++i) grid.emplace_back(coordinate(), coordinate());
        std::vector<std::vector<Scalar>> d(matrix_points, std::vector<Scalar>(matrix_points));
        for (std::size_t i = 0; i < matrix_points; ++i) {
            for (std::size_t j = 0; j < matrix_points; ++j) {
                d[i][j] = abs(grid[i].first - grid[j].first) + abs(grid[i].second - grid[j].second);
            }
        }
        metric = Metric::matrix(std::move(d));
        break;
    }
    }

    std::vector<Scalar> times;
    for (std::size_t i = 0; i < n; ++i) {
        times.push_back(floating ? draw.real(spec.horizon) : draw.rational(spec.horizon, spec.resolution));
    }
    std::sort(times.begin(), times.end());

    std::vector<int> signs(n, 0);
    if (spec.variant == Variant::mbpmd) {
        for (std::size_t i = 0; i < n; ++i) signs[i] = i < spec.m ? 1 : -1;
        draw.shuffle(signs);
    }

    std::vector<Request> requests;
    for (std::size_t i = 0; i < n; ++i) {
        Point pos;
        switch (spec.metric) {
        case MetricKind::line: pos = Point::line(coordinate()); break;
        case MetricKind::euclidean: pos = Point::plane(coordinate(), coordinate()); break;
        case MetricKind::ring: pos = metric.ring_point(coordinate()); break;
        case MetricKind::matrix: pos = Point::matrix(draw.below(matrix_points)); break;
        }
        requests.push_back({i, pos, times[i], signs[i]});
    }
    return Instance(spec.variant, mode, std::move(metric), std::move(requests));
}

} // namespace gdm
