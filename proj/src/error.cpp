// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

#include "oplex/error.hpp"

namespace oplex {

std::string_view errorCodeName(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidUtf8: return "InvalidUtf8";
    case ErrorCode::UnterminatedString: return "UnterminatedString";
    case ErrorCode::UnterminatedComment: return "UnterminatedComment";
    case ErrorCode::InvalidEscape: return "InvalidEscape";
    case ErrorCode::UnexpectedToken: return "UnexpectedToken";
    case ErrorCode::MultipleRoots: return "MultipleRoots";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::Io: return "Io";
    case ErrorCode::DuplicateModule: return "DuplicateModule";
    case ErrorCode::UnknownModule: return "UnknownModule";
    case ErrorCode::UnresolvedGrouping: return "UnresolvedGrouping";
    case ErrorCode::CircularGrouping: return "CircularGrouping";
    case ErrorCode::MissingInclude: return "MissingInclude";
    case ErrorCode::MalformedTreeLine: return "MalformedTreeLine";
    case ErrorCode::EmptyDiagram: return "EmptyDiagram";
    case ErrorCode::VendorMismatch: return "VendorMismatch";
    case ErrorCode::StorageWrite: return "StorageWrite";
    case ErrorCode::CatalogCorrupt: return "CatalogCorrupt";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::UnknownVendor: return "UnknownVendor";
    case ErrorCode::UnknownProfile: return "UnknownProfile";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::MissingCatalogEntry: return "MissingCatalogEntry";
    case ErrorCode::ZeroBaseline: return "ZeroBaseline";
    case ErrorCode::DimensionOverflow: return "DimensionOverflow";
    case ErrorCode::InvalidRecord: return "InvalidRecord";
    case ErrorCode::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

std::string SourcePos::str() const {
  std::string out = file;
  if (line != 0) {
    out += ':' + std::to_string(line);
    if (column != 0) out += ':' + std::to_string(column);
  }
  return out;
}

namespace {

std::string render(ErrorCode code, const std::string& message,
                   const SourcePos& pos) {
  std::string out;
  const std::string where = pos.str();
  if (!where.empty()) out = where + ": ";
  out += errorCodeName(code);
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, std::string message, SourcePos pos)
    : std::runtime_error(render(code, message, pos)),
      code_(code),
      message_(std::move(message)),
      pos_(std::move(pos)) {}

}  // namespace oplex
