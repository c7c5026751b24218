#pragma once

#include <string>

#ifndef RELQC_FIXTURES_DIR
#define RELQC_FIXTURES_DIR "fixtures"
#endif

inline std::string fixture_path(const std::string& tail) {
  return std::string(RELQC_FIXTURES_DIR) + "/" + tail;
}
