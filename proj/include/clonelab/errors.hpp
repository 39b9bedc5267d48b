#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace clonelab
{

/// Thrown when an argument violates an operation's precondition.
class argument_error : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an enumeration or closure would exceed its budget.
class resource_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A resource error that still hands back whatever was computed before the
/// budget ran out.
template<typename Partial>
class partial_result_error : public resource_error
{
public:
  partial_result_error( const std::string& what, Partial partial )
      : resource_error( what ), partial_( std::move( partial ) )
  {
  }

  const Partial& partial() const noexcept { return partial_; }

private:
  Partial partial_;
};

/// Enumeration limits shared by every exhaustive routine.
///
/// `max_tables` bounds the number of tables (operations, relations,
/// compositions) a single call may enumerate. `max_arity` bounds the arity of
/// operations that get fully materialized by enumeration routines.
struct budget
{
  std::uint64_t max_tables = 10'000'000;
  std::size_t max_arity = 3;
};

} // namespace clonelab
