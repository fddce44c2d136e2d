#pragma once

#include <cmath>
#include <string>

#include <json.hpp>

#include "stegpat/covers/enumerate.hpp"
#include "stegpat/error.hpp"

namespace stegpat::warden {

enum class Metric { InterArrivalVariance, ValueLsbBias, WhitespaceRunHistogram };

inline const char* to_string(Metric m) {
  switch (m) {
    case Metric::InterArrivalVariance: return "inter_arrival_variance";
    case Metric::ValueLsbBias: return "value_lsb_bias";
    case Metric::WhitespaceRunHistogram: return "whitespace_run_histogram";
  }
  return "?";
}

inline Metric metric_from_string(std::string_view s) {
  for (auto m : {Metric::InterArrivalVariance, Metric::ValueLsbBias, Metric::WhitespaceRunHistogram})
    if (s == to_string(m)) return m;
  throw Error(Errc::InvalidParams, "unknown metric '" + std::string(s) + "'");
}

struct RegularityReport {
  Metric metric = Metric::InterArrivalVariance;
  double cover_value = 0;
  double stego_value = 0;
  double threshold = 0;
  bool flagged = false;
};

/// Population variance of inter-packet gaps, in us^2.
inline double inter_arrival_variance(const PacketFlow& f) {
  if (f.packets.size() < 2) return 0;
  const std::size_t n = f.packets.size() - 1;
  double mean = 0;
  for (std::size_t i = 1; i <= n; ++i) mean += static_cast<double>(f.packets[i].ts_us - f.packets[i - 1].ts_us);
  mean /= static_cast<double>(n);
  double var = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double d = static_cast<double>(f.packets[i].ts_us - f.packets[i - 1].ts_us) - mean;
    var += d * d;
  }
  return var / static_cast<double>(n);
}

/// |mean LSB - 0.5| over a list of values; 0 for an empty list.
inline double lsb_bias(const std::vector<std::uint64_t>& values) {
  if (values.empty()) return 0;
  std::size_t ones = 0;
  for (auto v : values) ones += v & 1;
  return std::fabs(static_cast<double>(ones) / static_cast<double>(values.size()) - 0.5);
}

/// Share of space runs longer than one space.
inline double whitespace_run_share(const TextDocument& t) {
  const auto runs = space_runs(t);
  if (runs.empty()) return 0;
  std::size_t long_runs = 0;
  for (auto [b, e] : runs) long_runs += e - b >= 2 ? 1 : 0;
  return static_cast<double>(long_runs) / static_cast<double>(runs.size());
}

/// Value of a metric on one carrier. The LSB metric reads pixels of an image
/// or the bound field of a flow (field "ttl" unless told otherwise).
inline double measure(const CoverObject& c, Metric m, const CarrierBinding& binding = {}) {
  const auto unsupported = [&]() -> double {
    throw Error(Errc::UnsupportedCarrier,
                std::string(to_string(m)) + " is not defined on a " + stegpat::to_string(carrier_type(c)) + " carrier");
  };
  switch (m) {
    case Metric::InterArrivalVariance:
      if (auto* f = std::get_if<PacketFlow>(&c)) return inter_arrival_variance(*f);
      return unsupported();
    case Metric::ValueLsbBias: {
      std::vector<std::uint64_t> values;
      if (auto* img = std::get_if<ImageBuffer>(&c)) {
        values.assign(img->pixels.begin(), img->pixels.end());
      } else if (auto* f = std::get_if<PacketFlow>(&c)) {
        const auto b = binding.target == CarrierBinding::Target::Default ? CarrierBinding::field("ttl") : binding;
        if (b.target != CarrierBinding::Target::Field)
          throw Error(Errc::UnknownBinding, "LSB bias on a flow needs a field binding");
        for (const auto& p : f->packets)
          if (auto it = p.fields.find(b.name); it != p.fields.end()) values.push_back(it->second.value);
      } else {
        return unsupported();
      }
      return lsb_bias(values);
    }
    case Metric::WhitespaceRunHistogram:
      if (auto* t = std::get_if<TextDocument>(&c)) return whitespace_run_share(*t);
      return unsupported();
  }
  return 0;
}

inline RegularityReport regularity_score(const CoverObject& cover, const CoverObject& stego, Metric metric,
                                         double threshold, const CarrierBinding& binding = {}) {
  if (!std::isfinite(threshold) || threshold < 0)
    throw Error(Errc::InvalidParams, "threshold must be a finite non-negative number");
  if (cover.index() != stego.index())
    throw Error(Errc::UnsupportedCarrier, "cover and stego object are different carrier types");
  RegularityReport r{metric, measure(cover, metric, binding), measure(stego, metric, binding), threshold, false};
  r.flagged = std::fabs(r.stego_value - r.cover_value) > threshold;
  return r;
}

inline nlohmann::ordered_json report_to_json(const RegularityReport& r) {
  nlohmann::ordered_json j;
  j["metric"] = to_string(r.metric);
  j["cover_value"] = r.cover_value;
  j["stego_value"] = r.stego_value;
  j["threshold"] = r.threshold;
  j["flagged"] = r.flagged;
  return j;
}

}  // namespace stegpat::warden
