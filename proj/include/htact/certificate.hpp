#pragma once

#include <htact/engine.hpp>

#include <json.hpp>

#include <filesystem>

namespace htact {

inline constexpr std::string_view kCertificateFormat = "htact-certificate/1";

nlohmann::json point_to_json(Point const& p);
Point point_from_json(nlohmann::json const& j);

nlohmann::json to_json(Certificate const& cert);
Certificate certificate_from_json(nlohmann::json const& j);

// Canonical text: sorted keys, two-space indent, trailing newline.
std::string emit_certificate(Certificate const& cert);
void write_certificate(Certificate const& cert, std::filesystem::path const& path);
Certificate load_certificate(std::filesystem::path const& path);

// FNV-1a over the bytes.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace htact
