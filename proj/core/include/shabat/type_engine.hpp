#pragma once

#include "shabat/network.hpp"
#include "shabat/speiser.hpp"
#include "shabat/trees.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace shabat {

enum class Verdict { Parabolic, Hyperbolic, Inconclusive };

/// "parabolic-evidence", "hyperbolic-evidence" or "inconclusive".
const char* verdict_name(Verdict v);

struct Thresholds {
	double delta = 0.05;  // minimal growth per doubling for divergence
	double tau = 0.01;    // maximal tail for convergence
	std::size_t doublings = 3;
};

struct TypeVerdict {
	Verdict verdict = Verdict::Inconclusive;
	std::string criterion;
	std::vector<double> scale;  // depths or counts at which the trace is read
	std::vector<double> trace;
	Thresholds thresholds;
	/// Full per-step data (moduli, s(n), ...) behind the trace.
	std::vector<double> series;
	std::vector<std::pair<std::string, double>> measured;
	std::string note;

	double measure(const std::string& key) const;
};

/// Reads a trace sampled at increasing scales. Divergence: growth per
/// doubling of scale at least delta on each of the last `doublings` steps.
/// Convergence (only when allowed): the last two increments sum below tau.
Verdict classify_trend(const std::vector<double>& scale, const std::vector<double>& trace, const Thresholds& th,
                       bool allow_hyperbolic);

/// Partial sums of 1/mod over annuli, read at the given annulus counts.
/// Annuli must be edge-disjoint and each must separate its predecessor from
/// the later annulus and from every frontier vertex.
TypeVerdict nested_annuli_test(const EdgeNetwork& net, const std::vector<Annulus>& annuli,
                               const std::vector<std::uint32_t>& checkpoints, const Thresholds& th = {});

/// R(d): resistance between root and the distance-d sphere within the
/// radius-d ball of g.
std::vector<double> resistance_profile(const RotationGraph& g, Vertex root, const std::vector<std::uint32_t>& depths);

/// One graph per depth from the builder; the root is returned alongside.
using DepthBuilder = std::function<std::pair<RotationGraph, Vertex>(std::uint32_t)>;
TypeVerdict resistance_to_infinity(const DepthBuilder& build, const std::vector<std::uint32_t>& depths,
                                   const Thresholds& th = {});
TypeVerdict resistance_to_infinity(const RotationGraph& g, Vertex root, const std::vector<std::uint32_t>& depths,
                                   const Thresholds& th = {});

/// s(n): vertices at distance n from the root that lie on an unbounded face.
TypeVerdict nevanlinna_wittich(const SpeiserGraph& g, const std::vector<std::uint32_t>& checkpoints,
                               const Thresholds& th = {});

struct IsoperimetricOptions {
	double epsilon = 0.25;
	double stability = 0.9;      // c_last >= stability * c_prev
	std::uint32_t max_valence = 64;
};

/// Minimum of |boundary(V)| / |V|^(1/2 + epsilon) over BFS balls and greedy
/// minimal-boundary sets inside each radius.
TypeVerdict thomassen_isoperimetric(const RotationGraph& g, Vertex root, const std::vector<std::uint32_t>& radii,
                                    const IsoperimetricOptions& opt = {});

/// Exact fraction with int64 parts.
struct Rational {
	std::int64_t num = 0, den = 1;
	Rational() = default;
	Rational(std::int64_t n, std::int64_t d = 1);
	Rational operator+(const Rational& o) const;
	Rational operator-(const Rational& o) const;
	bool operator==(const Rational& o) const = default;
	bool operator<(const Rational& o) const;
	bool operator>(const Rational& o) const { return o < *this; }
	std::string str() const;
};

inline constexpr long kInfiniteMultiplicity = -1;

struct RamificationResult {
	std::vector<long> multiplicities;
	Rational defect_sum;
	Verdict verdict = Verdict::Inconclusive;
};

RamificationResult totally_ramified_test(const std::vector<long>& multiplicities);
/// Minimal settled valence of each color class (omitted when 1), plus the
/// omitted value infinity.
std::vector<long> tree_multiplicities(const TreeTruncation& t);

struct PipelineResult {
	TypeVerdict combined, resistance, annuli;
	std::uint32_t tree_depth = 0;
	std::size_t vertex_count = 0;
	std::uint32_t exact_radius = 0;
	double max_modulus_ratio = 0.0;  // max over n of mod A_n / n
};

/// Resistance and annuli analysis of an extension exact up to max(depths).
PipelineResult analyze_extension(const ExtendedGraph& x, const std::vector<std::uint32_t>& depths,
                                 const Thresholds& th = {});

/// Extension of the Speiser graph of the family (n = 0 patches only the
/// unbounded faces), grown until exact up to max(depths).
ExtendedGraph build_exact_extension(const TreeFamily& family, std::uint32_t n, std::uint32_t radius,
                                    std::uint32_t* tree_depth = nullptr);

PipelineResult doyle_merenkov_pipeline(const TreeFamily& family, std::uint32_t n,
                                       const std::vector<std::uint32_t>& depths, const Thresholds& th = {});

/// The same analysis on the standard model with N ends.
PipelineResult standard_model_pipeline(int ends, const std::vector<std::uint32_t>& depths, const Thresholds& th = {});

}  // namespace shabat
