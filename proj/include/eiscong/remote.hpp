#pragma once

#include "eiscong/newform.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace eiscong {

/// Where and how to query the external newform database. Templates expand
/// {level}, {weight} and {label}.
struct RemoteConfig {
    std::string endpoint = "https://www.lmfdb.org";
    std::string newforms_template =
        "/api/mf_newforms/?level={level}&weight={weight}&char_order=1&_format=json"
        "&_fields=label,level,weight,atkin_lehner_eigenvals";
    std::string coefficients_template =
        "/api/mf_hecke_nf/?label={label}&_format=json"
        "&_fields=label,field_poly,hecke_ring_numerators,hecke_ring_denominators,an";
    std::filesystem::path cache_dir = "cache";
    int attempts = 3;
    std::chrono::milliseconds backoff_initial{250};
    std::chrono::milliseconds backoff_cap{2000};
    std::chrono::seconds timeout{20};
};

/// Fetches every trivial-character newform of (level, weight), validates each
/// record, writes it into config.cache_dir and returns them.
/// NetworkError after the configured attempts; SchemaError when the payload
/// lacks coefficient or Atkin-Lehner data or a record fails validation.
std::vector<NewformRecord> fetch_remote(std::int64_t level, std::int64_t weight, const RemoteConfig& config);

/// Converts one joined database row pair into a record (exposed for tests).
NewformRecord record_from_remote(const std::string& newform_json_object, const std::string& coefficients_json_object,
                                 const std::string& source);

/// Number of HTTP requests attempted by this process.
std::uint64_t network_attempts();

}  // namespace eiscong
