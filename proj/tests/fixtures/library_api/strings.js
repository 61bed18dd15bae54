var strings = {
  capitalize: function(s) {
    return s.charAt(0).toUpperCase() + s.slice(1);
  },
  repeat: function(s, n) {
    var out = "";
    while (n-- > 0) out += s;
    return out;
  },
  reverse: function(s) {
    return s.split("").reverse().join("");
  }
};

module.exports = strings;
