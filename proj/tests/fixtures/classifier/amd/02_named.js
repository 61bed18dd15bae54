define("app/score", ["app/board"], function(board) {
  var score = 0;
  return { add: function(n) { score += n; board.draw(score); } };
});
