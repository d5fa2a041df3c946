// Copyright 2026 The OPLEX Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace oplex {

enum class ErrorCode : std::uint8_t {
  // yang_parser
  InvalidUtf8,
  UnterminatedString,
  UnterminatedComment,
  InvalidEscape,
  UnexpectedToken,
  MultipleRoots,
  EmptyInput,
  // schema_builder
  Io,
  DuplicateModule,
  UnknownModule,
  UnresolvedGrouping,
  CircularGrouping,
  MissingInclude,
  // tree_frontend
  MalformedTreeLine,
  EmptyDiagram,
  // catalog
  VendorMismatch,
  StorageWrite,
  CatalogCorrupt,
  UnsupportedFormat,
  // selector / dimension
  UnknownVendor,
  UnknownProfile,
  InvalidProfile,
  MissingCatalogEntry,
  ZeroBaseline,
  DimensionOverflow,
  // ixp_usecase
  InvalidRecord,
  MalformedInput,
};

std::string_view errorCodeName(ErrorCode code) noexcept;

/// Source position attached to diagnostics. Line and column are 1-based;
/// zero means "unknown".
struct SourcePos {
  std::string file;
  std::uint32_t line = 0;
  std::uint32_t column = 0;

  std::string str() const;
};

/// Every failure raised by the library. what() is a one-line, human-readable
/// diagnostic that already includes the code name and the position.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, SourcePos pos = {});

  ErrorCode code() const noexcept { return code_; }
  const SourcePos& pos() const noexcept { return pos_; }
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
  SourcePos pos_;
};

}  // namespace oplex
