#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace anysyn
{

/*! \brief Bit-parallel Boolean function over up to 16 variables.
 *
 * Bit order is LSB-first: the value under assignment (x0, x1, ..., xk-1)
 * lives at bit index x0 + 2*x1 + 4*x2 + ...; variable i toggles with
 * period 2^i.  Padding bits beyond 2^num_vars in the last word are kept
 * zero so that whole-word comparison and hashing are exact.
 */
class TruthTable
{
public:
  static constexpr uint32_t max_vars = 16u;

  TruthTable() = default;
  explicit TruthTable( uint32_t num_vars );

  uint32_t num_vars() const { return num_vars_; }
  uint64_t num_bits() const { return uint64_t( 1 ) << num_vars_; }
  uint32_t num_words() const { return uint32_t( words_.size() ); }

  bool get_bit( uint64_t index ) const
  {
    return ( words_[index >> 6] >> ( index & 63 ) ) & 1;
  }
  void set_bit( uint64_t index, bool value )
  {
    if ( value )
      words_[index >> 6] |= uint64_t( 1 ) << ( index & 63 );
    else
      words_[index >> 6] &= ~( uint64_t( 1 ) << ( index & 63 ) );
  }

  uint64_t const* words() const { return words_.data(); }
  uint64_t* words() { return words_.data(); }

  bool is_const0() const;
  bool is_const1() const;
  uint64_t count_ones() const;

  bool operator==( TruthTable const& other ) const
  {
    return num_vars_ == other.num_vars_ && words_ == other.words_;
  }
  bool operator!=( TruthTable const& other ) const { return !( *this == other ); }
  bool operator<( TruthTable const& other ) const { return words_ < other.words_; }

  /* hex string, most significant digit first; row 0 is the least
   * significant bit of the last digit */
  std::string to_hex() const;

  uint64_t hash() const;

private:
  void mask_padding();

  uint32_t num_vars_ = 0;
  std::vector<uint64_t> words_ = { 0 };

  friend TruthTable tt_const( uint32_t, bool );
  friend TruthTable tt_not( TruthTable const& );
  friend TruthTable tt_and( TruthTable const&, TruthTable const& );
  friend TruthTable tt_xor( TruthTable const&, TruthTable const& );
};

/* constant function over num_vars variables */
TruthTable tt_const( uint32_t num_vars, bool value );

/* projection x_i over num_vars variables */
TruthTable tt_var( uint32_t num_vars, uint32_t i );

TruthTable tt_not( TruthTable const& a );
TruthTable tt_and( TruthTable const& a, TruthTable const& b );
TruthTable tt_xor( TruthTable const& a, TruthTable const& b );

enum class TableOp
{
  And,
  Xor,
  Not
};

/* generic dispatcher; b must be null for Not and non-null otherwise */
TruthTable tt_apply( TableOp op, TruthTable const& a, TruthTable const* b );

/* true iff a implies b, i.e. a & ~b == 0 */
bool implies( TruthTable const& a, TruthTable const& b );

/* canonical representative of {t, ~t}: the lexicographically smaller one */
TruthTable tt_canon( TruthTable const& t, bool* complemented = nullptr );

struct TruthTableHash
{
  size_t operator()( TruthTable const& t ) const { return size_t( t.hash() ); }
};

} // namespace anysyn
