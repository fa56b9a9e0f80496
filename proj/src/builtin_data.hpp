#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace twistcheck::detail {

std::optional<std::string_view> builtin_surface_json(const std::string& name);
std::vector<std::string> builtin_surface_names();

}  // namespace twistcheck::detail
