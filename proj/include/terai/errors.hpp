#ifndef TERAI_ERRORS_HPP
#define TERAI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace terai {

/* Precondition or domain violation (non-definite form, mismatched
 * discriminants, gcd conditions, ...). */
class domain_error : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

class invalid_discriminant : public domain_error
{
  public:
    using domain_error::domain_error;
};

class invalid_matrix : public domain_error
{
  public:
    using domain_error::domain_error;
};

/* Hensel lifting of a root r with p | 2r. */
class singular_lift : public domain_error
{
  public:
    using domain_error::domain_error;
};

/* Input beyond a configured computational budget. */
class capacity_error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class order_overflow : public capacity_error
{
  public:
    using capacity_error::capacity_error;
};

} // namespace terai

#endif
